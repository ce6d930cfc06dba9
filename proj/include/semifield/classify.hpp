#pragma once

// Canonical forms through cyclic (right principal power) representations,
// isomorphism and isotopy classification, automorphism counts and autotopy
// orders, and the S3 action on semifield planes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semifield/gf_matrix.hpp"
#include "semifield/parallel.hpp"
#include "semifield/rational.hpp"
#include "semifield/semifield.hpp"

namespace semifield {

/// Codes of (A_2, ..., A_d) in a cyclic basis; the canonical key is the
/// lexicographically least such tuple.
struct CanonicalKey {
    std::array<std::uint64_t, kMaxDim - 1> codes{};
    std::uint8_t size = 0;

    std::span<const std::uint64_t> view() const { return {codes.data(), size}; }

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend auto operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
        return std::lexicographical_compare_three_way(a.codes.begin(), a.codes.begin() + a.size, b.codes.begin(),
                                                      b.codes.begin() + b.size);
    }
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ k.size;
        for (std::size_t i = 0; i < k.size; ++i) {
            h ^= k.codes[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

using KeySet = std::unordered_set<CanonicalKey, CanonicalKeyHash>;

inline std::string to_string(const CanonicalKey& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size; ++i) s += (i ? ", " : "") + std::to_string(k.codes[i]);
    return s + ")";
}

/// Primitivity lookup shared per field spec.
inline const PrimitivityTable& primitivity_table(FieldSpec f) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, PrimitivityTable> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({f.p(), f.d()});
    if (it == cache.end()) it = cache.emplace(std::pair{f.p(), f.d()}, PrimitivityTable(f)).first;
    return it->second;
}

namespace detail {

/// Basis (u, R_w u, R_w^2 u, ...) as columns, or nullopt if dependent.
inline std::optional<std::array<Vector, kMaxDim>> power_basis(const Matrix& rw, const Vector& unit) {
    const FieldSpec f = unit.spec();
    std::array<Vector, kMaxDim> b;
    b[0] = unit;
    for (std::size_t k = 1; k < f.d(); ++k) b[k] = rw * b[k - 1];
    if (rank_of_columns(f, std::span<const Vector>(b.data(), f.d())) < f.d()) return std::nullopt;
    return b;
}

/// Calls fn(w, basis) for each nonzero w whose right operator has a primitive
/// characteristic polynomial, in ascending code order of w.
template <class F>
void for_each_cyclic_basis(const RightOps& ops, const Vector& unit, F&& fn) {
    const FieldSpec f = ops.spec();
    const auto& prim = primitivity_table(f);
    const std::uint64_t n = f.order();
    for (std::uint64_t code = 1; code < n; ++code) {
        const Vector w = Vector::from_code(f, code);
        const Matrix rw = ops.right(w);
        const Poly cp = char_poly(rw);
        if (!prim(cp)) continue;
        auto basis = power_basis(rw, unit);
        if (!basis) continue;
        fn(w, rw, cp, *basis);
    }
}

inline CanonicalKey tuple_in_basis(const RightOps& ops, std::span<const Vector> basis) {
    const StandardSet s = rebase(ops, basis);
    CanonicalKey k;
    k.size = static_cast<std::uint8_t>(s.dim() - 1);
    for (std::size_t i = 1; i < s.dim(); ++i) k.codes[i - 1] = encode_matrix(s.matrix(i)).value;
    return k;
}

/// Lexicographic minimum over cyclic bases, with early exit per matrix.
inline std::optional<CanonicalKey> min_cyclic_tuple(const RightOps& ops, const Vector& unit) {
    const FieldSpec f = ops.spec();
    const std::size_t d = f.d();
    std::optional<CanonicalKey> best;
    for_each_cyclic_basis(ops, unit, [&](const Vector&, const Matrix&, const Poly& cp,
                                         const std::array<Vector, kMaxDim>& basis) {
        CanonicalKey k;
        k.size = static_cast<std::uint8_t>(d - 1);
        // In a power basis, right multiplication by the generator is the companion matrix.
        k.codes[0] = encode_matrix(companion_matrix(cp)).value;
        if (best && k.codes[0] > best->codes[0]) return;
        const Matrix p = Matrix::from_columns(f, std::span<const Vector>(basis.data(), d));
        const Matrix p_inv = inverse(p);
        bool tie = best && k.codes[0] == best->codes[0];
        for (std::size_t i = 2; i < d; ++i) {
            const std::uint64_t c = encode_matrix(p_inv * ops.right(basis[i]) * p).value;
            if (tie) {
                if (c > best->codes[i - 1]) return;
                if (c < best->codes[i - 1]) tie = false;
            }
            k.codes[i - 1] = c;
        }
        if (!best || k < *best) best = k;
    });
    return best;
}

}  // namespace detail

/// (e, y, y^2), ..., y^(d-1)) with right principal powers y^(k) = y^(k-1) * y, when
/// independent and R_y has a primitive characteristic polynomial.
inline std::optional<std::vector<Element>> right_power_basis(const StandardSet& s, const Element& y) {
    if (y.is_zero()) return std::nullopt;
    const Matrix ry = s.ops().right(y);
    if (!primitivity_table(s.spec())(char_poly(ry))) return std::nullopt;
    auto b = detail::power_basis(ry, s.identity());
    if (!b) return std::nullopt;
    return std::vector<Element>(b->begin(), b->begin() + s.dim());
}

/// Every cyclic-basis tuple of s, with the number of generators producing it.
inline std::map<CanonicalKey, std::uint64_t> cyclic_representation_counts(const StandardSet& s) {
    std::map<CanonicalKey, std::uint64_t> out;
    detail::for_each_cyclic_basis(s.ops(), s.identity(),
                                  [&](const Vector&, const Matrix&, const Poly&, const std::array<Vector, kMaxDim>& b) {
                                      ++out[detail::tuple_in_basis(s.ops(), std::span<const Vector>(b.data(), s.dim()))];
                                  });
    if (out.empty()) throw NotRightPrimitive();
    return out;
}

inline std::set<CanonicalKey> cyclic_representations(const StandardSet& s) {
    std::set<CanonicalKey> out;
    for (const auto& [k, n] : cyclic_representation_counts(s)) out.insert(k);
    return out;
}

/// Canonical key of the algebra with right operators `ops` and identity `unit`.
inline CanonicalKey canonical_key(const RightOps& ops, const Vector& unit) {
    auto k = detail::min_cyclic_tuple(ops, unit);
    if (!k) throw NotRightPrimitive();
    return *k;
}

inline CanonicalKey canonical_key(const StandardSet& s) { return canonical_key(s.ops(), s.identity()); }

/// Decodes a key produced by canonical_key without re-running the invertibility scan.
inline StandardSet set_from_key(FieldSpec f, const CanonicalKey& k) {
    RightOps ops(f);
    ops.op(0) = Matrix::identity(f);
    for (std::size_t i = 0; i < k.size; ++i) ops.op(i + 1) = decode_matrix({i + 2, k.codes[i]}, f);
    return StandardSet::trusted(ops);
}

inline CanonicalKey key_from_codes(std::span<const std::uint64_t> codes) {
    CanonicalKey k;
    k.size = static_cast<std::uint8_t>(codes.size());
    std::copy(codes.begin(), codes.end(), k.codes.begin());
    return k;
}

/// Number of automorphisms: images z of a fixed primitive anchor y with the same
/// characteristic polynomial whose induced map y^(k) -> z^(k) is multiplicative.
inline std::uint64_t aut_order(const StandardSet& s) {
    const FieldSpec f = s.spec();
    const std::size_t d = f.d();
    const RightOps& ops = s.ops();
    std::optional<Poly> anchor_cp;
    Matrix anchor_inv;
    detail::for_each_cyclic_basis(ops, s.identity(), [&](const Vector&, const Matrix&, const Poly& cp,
                                                         const std::array<Vector, kMaxDim>& b) {
        if (anchor_cp) return;
        anchor_cp = cp;
        anchor_inv = inverse(Matrix::from_columns(f, std::span<const Vector>(b.data(), d)));
    });
    if (!anchor_cp) throw NotRightPrimitive();

    std::uint64_t count = 0;
    for (std::uint64_t code = 1; code < f.order(); ++code) {
        const Vector z = Vector::from_code(f, code);
        const Matrix rz = ops.right(z);
        if (!(char_poly(rz) == *anchor_cp)) continue;
        auto b = detail::power_basis(rz, s.identity());
        if (!b) continue;
        const Matrix map = Matrix::from_columns(f, std::span<const Vector>(b->data(), d)) * anchor_inv;
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i)
            for (std::size_t j = 0; j < d && ok; ++j) {
                const Vector xi = Vector::unit(f, i), xj = Vector::unit(f, j);
                ok = map * ops.multiply(xi, xj) == ops.multiply(map * xi, map * xj);
            }
        if (ok) ++count;
    }
    return count;
}

struct IsoClassRecord {
    CanonicalKey key;
    std::uint64_t aut_order = 1;
    bool commutative = false;
};

/// Dedups by canonical key; records are returned in key order.
inline std::vector<IsoClassRecord> isomorphism_classes(std::span<const StandardSet> sets, unsigned threads = 0) {
    if (sets.empty()) return {};
    std::vector<CanonicalKey> keys(sets.size());
    parallel_for(sets.size(), threads, [&](std::size_t i) { keys[i] = canonical_key(sets[i]); });
    std::map<CanonicalKey, std::size_t> first;
    for (std::size_t i = 0; i < sets.size(); ++i) first.emplace(keys[i], i);
    std::vector<IsoClassRecord> out(first.size());
    std::vector<CanonicalKey> ordered;
    for (const auto& [k, i] : first) ordered.push_back(k);
    parallel_for(ordered.size(), threads, [&](std::size_t i) {
        const StandardSet rep = set_from_key(sets.front().spec(), ordered[i]);
        out[i] = {ordered[i], aut_order(rep), is_commutative(cube_from_set(rep))};
    });
    return out;
}

/// Canonical keys of all principal isotopes D_(y,z) with their multiplicities.
struct IsotopeExpansion {
    std::unordered_map<CanonicalKey, std::uint64_t, CanonicalKeyHash> keys;

    bool contains(const CanonicalKey& k) const { return keys.count(k) != 0; }
};

inline IsotopeExpansion expand_isotopes(const RightOps& ops, unsigned threads = 0) {
    const FieldSpec f = ops.spec();
    const std::uint64_t n = f.order();
    std::vector<Matrix> ly_inv(n), rz_inv(n);
    for (std::uint64_t c = 1; c < n; ++c) {
        const Vector v = Vector::from_code(f, c);
        ly_inv[c] = inverse(ops.left(v));
        rz_inv[c] = inverse(ops.right(v));
    }
    std::vector<std::unordered_map<CanonicalKey, std::uint64_t, CanonicalKeyHash>> partial(n);
    parallel_for(n - 1, threads, [&](std::size_t idx) {
        const std::uint64_t yc = idx + 1;
        const Vector y = Vector::from_code(f, yc);
        RightOps base(f);
        for (std::size_t k = 0; k < f.d(); ++k) base.op(k) = ops.right(ly_inv[yc].column(k));
        auto& local = partial[yc];
        for (std::uint64_t zc = 1; zc < n; ++zc) {
            RightOps iso(f);
            for (std::size_t k = 0; k < f.d(); ++k) iso.op(k) = base.op(k) * rz_inv[zc];
            const Vector unit = ops.multiply(y, Vector::from_code(f, zc));
            ++local[canonical_key(iso, unit)];
        }
    });
    IsotopeExpansion out;
    for (auto& m : partial)
        for (const auto& [k, c] : m) out.keys[k] += c;
    return out;
}

inline IsotopeExpansion expand_isotopes(const StandardSet& s, unsigned threads = 0) {
    return expand_isotopes(s.ops(), threads);
}

struct IsotopeInventory {
    std::vector<IsoClassRecord> classes;             // in key order
    std::map<std::uint64_t, std::uint64_t> by_aut;   // aut order -> number of classes
    Fraction sa_sum;
};

inline IsotopeInventory inventory_from(FieldSpec f, const IsotopeExpansion& e, unsigned threads = 0) {
    IsotopeInventory inv;
    for (const auto& [k, c] : e.keys) inv.classes.push_back({k, 1, false});
    std::sort(inv.classes.begin(), inv.classes.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    parallel_for(inv.classes.size(), threads, [&](std::size_t i) {
        const StandardSet s = set_from_key(f, inv.classes[i].key);
        inv.classes[i].aut_order = aut_order(s);
        inv.classes[i].commutative = is_commutative(cube_from_set(s));
    });
    for (const auto& c : inv.classes) {
        ++inv.by_aut[c.aut_order];
        inv.sa_sum += Fraction(1, c.aut_order);
    }
    return inv;
}

/// All semifields isotopic to s up to isomorphism, with the S/A sum of 1/|Aut|.
inline IsotopeInventory isotope_inventory(const StandardSet& s, unsigned threads = 0) {
    return inventory_from(s.spec(), expand_isotopes(s, threads), threads);
}

/// (p^d - 1)^2 / (S/A sum), which must be a positive integer.
inline std::uint64_t at_order_from(FieldSpec f, const Fraction& sa_sum) {
    const std::uint64_t n = f.order() - 1;
    const Fraction q = Fraction(n * n) / sa_sum;
    if (!q.is_integer() || q.num() == 0) throw NonIntegerAtOrder();
    return q.num();
}

inline std::uint64_t at_order(const StandardSet& s, unsigned threads = 0) {
    return at_order_from(s.spec(), isotope_inventory(s, threads).sa_sum);
}

/// Renders the class inventory as "count/aut + ..." in ascending aut order.
inline std::string format_inventory(const std::map<std::uint64_t, std::uint64_t>& by_aut) {
    std::string s;
    for (const auto& [aut, count] : by_aut) s += (s.empty() ? "" : "+") + std::to_string(count) + "/" + std::to_string(aut);
    return s;
}

/// Isotopy partition of the six index-permuted planes of one semifield.
struct OrbitStructure {
    /// isotopic[i]: the plane permuted by PermS3::all()[i] is isotopic to the original.
    std::array<bool, 6> isotopic{};
    std::size_t orbit_size = 0;
    /// Groups of permutations whose planes are mutually isotopic.
    std::vector<std::vector<PermS3>> partition;

    bool self_dual() const { return isotopic[1]; }       // (12)
    bool self_transpose() const { return isotopic[2]; }  // (13)
};

/// Canonical key of the unitalized sigma-transformed cube.
inline CanonicalKey sigma_key(const StandardSet& s, PermS3 sigma) {
    return canonical_key(unitalize(sigma_transform(cube_from_set(s), sigma)));
}

inline OrbitStructure orbit_from(const StandardSet& s, const IsotopeExpansion& own) {
    OrbitStructure o;
    const auto perms = PermS3::all();
    std::vector<PermS3> stabilizer;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        o.isotopic[i] = own.contains(sigma_key(s, perms[i]));
        if (o.isotopic[i]) stabilizer.push_back(perms[i]);
    }
    // The sigma with isotopic planes form a subgroup H; planes a and b are
    // isotopic exactly when a lies in the left coset bH.
    o.orbit_size = perms.size() / stabilizer.size();
    std::array<bool, 6> placed{};
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (placed[i]) continue;
        std::vector<PermS3> coset;
        for (const auto& h : stabilizer) {
            const PermS3 g = perms[i] * h;
            for (std::size_t j = 0; j < perms.size(); ++j)
                if (perms[j] == g) placed[j] = true;
            coset.push_back(g);
        }
        o.partition.push_back(coset);
    }
    return o;
}

inline OrbitStructure s3_orbit_structure(const StandardSet& s, unsigned threads = 0) {
    return orbit_from(s, expand_isotopes(s, threads));
}

struct PlaneClassRecord {
    CanonicalKey representative;
    std::uint64_t aut_order = 1;
    std::uint64_t at_order = 1;
    Fraction sa_sum;
    std::map<std::uint64_t, std::uint64_t> inventory;
    std::size_t orbit_size = 1;
    OrbitStructure orbit;
    bool commutative = false;  // some member semifield is commutative
    bool associative = false;  // the representative is a field
    /// Isomorphism classes absorbed by this class (its isotopes, or for S3 classes
    /// the isotopes of all permuted planes).
    std::size_t member_count = 0;
    /// Distinct isotopy classes met while expanding the S3 orbit.
    std::size_t expanded_isotopy_classes = 0;
};

namespace detail {

inline bool any_commutative(FieldSpec f, const std::vector<CanonicalKey>& keys, unsigned threads) {
    std::vector<char> flags(keys.size(), 0);
    parallel_for(keys.size(), threads,
                 [&](std::size_t i) { flags[i] = is_commutative(cube_from_set(set_from_key(f, keys[i]))); });
    return std::any_of(flags.begin(), flags.end(), [](char c) { return c != 0; });
}

inline std::vector<std::pair<CanonicalKey, StandardSet>> sorted_by_key(std::span<const StandardSet> reps,
                                                                       unsigned threads) {
    std::vector<std::pair<CanonicalKey, StandardSet>> out(reps.size());
    parallel_for(reps.size(), threads, [&](std::size_t i) {
        const CanonicalKey k = canonical_key(reps[i]);
        out[i] = {k, set_from_key(reps[i].spec(), k)};
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

inline PlaneClassRecord make_record(const StandardSet& rep, const CanonicalKey& key, const IsotopeExpansion& own,
                                    unsigned threads) {
    const FieldSpec f = rep.spec();
    const IsotopeInventory inv = inventory_from(f, own, threads);
    PlaneClassRecord r;
    r.representative = key;
    r.aut_order = aut_order(rep);
    r.sa_sum = inv.sa_sum;
    r.at_order = at_order_from(f, inv.sa_sum);
    r.inventory = inv.by_aut;
    r.orbit = orbit_from(rep, own);
    r.orbit_size = r.orbit.orbit_size;
    r.associative = is_associative(rep);
    return r;
}

}  // namespace detail

/// Sweep in canonical-key order: each representative not yet absorbed opens a new
/// isotopy class, which absorbs the canonical keys of all its principal isotopes.
inline std::vector<PlaneClassRecord> isotopy_classes(std::span<const StandardSet> reps, unsigned threads = 0) {
    if (reps.empty()) return {};
    const FieldSpec f = reps.front().spec();
    KeySet seen;
    std::vector<PlaneClassRecord> out;
    for (const auto& [key, rep] : detail::sorted_by_key(reps, threads)) {
        if (seen.count(key)) continue;
        const IsotopeExpansion own = expand_isotopes(rep, threads);
        std::vector<CanonicalKey> members;
        for (const auto& [k, c] : own.keys) {
            seen.insert(k);
            members.push_back(k);
        }
        PlaneClassRecord r = detail::make_record(rep, key, own, threads);
        r.member_count = members.size();
        r.commutative = detail::any_commutative(f, members, threads);
        r.expanded_isotopy_classes = 1;
        out.push_back(std::move(r));
    }
    return out;
}

/// As isotopy_classes, but a new class also absorbs the principal isotopes of its
/// five index-permuted planes.
inline std::vector<PlaneClassRecord> s3_classes(std::span<const StandardSet> reps, unsigned threads = 0) {
    if (reps.empty()) return {};
    const FieldSpec f = reps.front().spec();
    KeySet seen;
    std::vector<PlaneClassRecord> out;
    for (const auto& [key, rep] : detail::sorted_by_key(reps, threads)) {
        if (seen.count(key)) continue;
        const IsotopeExpansion own = expand_isotopes(rep, threads);
        KeySet members;
        std::size_t expanded = 0;
        for (const PermS3 sigma : PermS3::all()) {
            const StandardSet plane = unitalize(sigma_transform(cube_from_set(rep), sigma));
            const CanonicalKey pk = canonical_key(plane);
            if (members.count(pk)) continue;
            const IsotopeExpansion e = sigma == PermS3::identity() ? own : expand_isotopes(plane, threads);
            ++expanded;
            for (const auto& [k, c] : e.keys) members.insert(k);
        }
        seen.insert(members.begin(), members.end());
        PlaneClassRecord r = detail::make_record(rep, key, own, threads);
        r.member_count = members.size();
        r.commutative = detail::any_commutative(f, std::vector<CanonicalKey>(members.begin(), members.end()), threads);
        r.expanded_isotopy_classes = expanded;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace semifield
