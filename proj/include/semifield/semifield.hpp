#pragma once

// Semifields as standard matrix sets and 3-cubes, with the index
// permutation (S3) action, cube transforms, principal isotopes and
// unitalization of presemifields.
//
// Conventions: coordinates are columns; A_i is the matrix of right
// multiplication by the basis vector x_i, so a*b = (sum_i b_i A_i) a.
// The cube entry A[i1][i2][i3] is the x_{i3}-coordinate of x_{i1} x_{i2}.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "semifield/errors.hpp"
#include "semifield/gf_matrix.hpp"

namespace semifield {

using Element = Vector;

/// Enumerates every vector of GF(p)^d (including zero) in code order.
template <class F>
void for_each_vector(FieldSpec spec, F&& fn) {
    const std::uint64_t n = spec.order();
    for (std::uint64_t code = 0; code < n; ++code) fn(Vector::from_code(spec, code));
}

/// Right-multiplication operators of a (pre)semifield in some basis:
/// op[k] is the matrix of a -> a * x_k.
class RightOps {
public:
    RightOps() = default;
    explicit RightOps(FieldSpec spec) : spec_(spec) {}

    const FieldSpec& spec() const noexcept { return spec_; }
    const Matrix& op(std::size_t k) const noexcept { return ops_[k]; }
    Matrix& op(std::size_t k) noexcept { return ops_[k]; }

    /// Matrix of a -> a * b.
    Matrix right(const Element& b) const {
        Matrix r(spec_);
        for (std::size_t k = 0; k < spec_.d(); ++k)
            if (b[k] != 0) r += b[k] * ops_[k];
        return r;
    }

    /// Matrix of b -> a * b.
    Matrix left(const Element& a) const {
        Matrix l(spec_);
        for (std::size_t k = 0; k < spec_.d(); ++k) l.set_column(k, ops_[k] * a);
        return l;
    }

    Element multiply(const Element& a, const Element& b) const { return right(b) * a; }

private:
    FieldSpec spec_;
    std::array<Matrix, kMaxDim> ops_{};
};

/// A semifield given by its right-multiplication matrices A_1 = I, A_2, ..., A_d.
class StandardSet {
public:
    StandardSet() = default;

    const FieldSpec& spec() const noexcept { return ops_.spec(); }
    std::size_t dim() const noexcept { return spec().d(); }
    /// 0-based: matrix(0) is A_1.
    const Matrix& matrix(std::size_t i) const noexcept { return ops_.op(i); }
    const RightOps& ops() const noexcept { return ops_; }

    Element identity() const { return Vector::unit(spec(), 0); }

    /// Decimal codes of A_2..A_d.
    std::vector<std::uint64_t> codes() const {
        std::vector<std::uint64_t> out;
        for (std::size_t i = 1; i < dim(); ++i) out.push_back(encode_matrix(matrix(i)).value);
        return out;
    }

    friend bool operator==(const StandardSet& a, const StandardSet& b) {
        if (!(a.spec() == b.spec())) return false;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!(a.matrix(i) == b.matrix(i))) return false;
        return true;
    }

    /// Wraps matrices already known to satisfy every standard-set condition.
    static StandardSet trusted(RightOps ops) {
        StandardSet s;
        s.ops_ = std::move(ops);
        return s;
    }

private:
    RightOps ops_;
};

namespace detail {

/// Calls fn(lambda) for every nonzero lambda in GF(p)^n whose leading nonzero entry is 1.
template <class F>
bool for_each_projective_point(FieldSpec f, std::size_t n, F&& fn) {
    std::array<std::uint8_t, kMaxDim> lam{};
    for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t free = n - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free; ++i) total *= f.p();
        for (std::uint64_t t = 0; t < total; ++t) {
            lam.fill(0);
            lam[lead] = 1;
            std::uint64_t x = t;
            for (std::size_t i = 0; i < free; ++i) {
                lam[lead + 1 + i] = static_cast<std::uint8_t>(x % f.p());
                x /= f.p();
            }
            if (!fn(std::span<const std::uint8_t>(lam.data(), n))) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Checks the standard-set conditions and wraps the matrices; throws InvalidStandardSet
/// naming the first violated condition.
inline StandardSet validate_standard_set(std::span<const Matrix> mats) {
    using Reason = InvalidStandardSet::Reason;
    if (mats.empty()) throw InvalidStandardSet(Reason::WrongShape, "empty matrix list");
    const FieldSpec f = mats[0].spec();
    const std::size_t d = f.d();
    if (mats.size() != d)
        throw InvalidStandardSet(Reason::WrongShape, "expected " + std::to_string(d) + " matrices, got " +
                                                         std::to_string(mats.size()));
    for (const auto& m : mats)
        if (!(m.spec() == f)) throw InvalidStandardSet(Reason::WrongShape, "mixed field specs");
    if (!(mats[0] == Matrix::identity(f)))
        throw InvalidStandardSet(Reason::NotIdentityFirst, "A_1 is not the identity");
    for (std::size_t i = 1; i < d; ++i)
        if (!(mats[i].column(0) == Vector::unit(f, i)))
            throw InvalidStandardSet(Reason::BadFirstColumn,
                                     "first column of A_" + std::to_string(i + 1) + " is not e_" + std::to_string(i + 1),
                                     i + 1);
    RightOps ops(f);
    for (std::size_t i = 0; i < d; ++i) ops.op(i) = mats[i];
    std::vector<std::uint8_t> bad;
    detail::for_each_projective_point(f, d, [&](std::span<const std::uint8_t> lam) {
        Element b(f);
        for (std::size_t i = 0; i < d; ++i) b[i] = lam[i];
        if (is_invertible(ops.right(b))) return true;
        bad.assign(lam.begin(), lam.end());
        return false;
    });
    if (!bad.empty()) {
        std::string msg = "singular combination (";
        for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? "," : "") + std::to_string(bad[i]);
        throw InvalidStandardSet(Reason::SingularCombination, msg + ")", 0, bad);
    }
    return StandardSet::trusted(std::move(ops));
}

inline StandardSet validate_standard_set(std::initializer_list<Matrix> mats) {
    return validate_standard_set(std::span<const Matrix>(mats.begin(), mats.size()));
}

/// Decodes (a_2, ..., a_d) or (a_1, ..., a_d) and validates.
inline StandardSet standard_set_from_codes(FieldSpec f, std::span<const std::uint64_t> codes) {
    const std::size_t d = f.d();
    std::vector<Matrix> mats;
    std::size_t first = 0;
    if (codes.size() == d - 1) {
        mats.push_back(Matrix::identity(f));
        first = 1;
    } else if (codes.size() != d) {
        throw ParseError("expected " + std::to_string(d - 1) + " or " + std::to_string(d) + " matrix codes");
    }
    for (std::size_t i = 0; i < codes.size(); ++i) mats.push_back(decode_matrix({first + i + 1, codes[i]}, f));
    return validate_standard_set(mats);
}

inline StandardSet standard_set_from_codes(FieldSpec f, std::initializer_list<std::uint64_t> codes) {
    return standard_set_from_codes(f, std::span<const std::uint64_t>(codes.begin(), codes.size()));
}

inline Element multiply(const StandardSet& s, const Element& a, const Element& b) { return s.ops().multiply(a, b); }

/// Structure constants A[i1][i2][i3] of a d-dimensional algebra.
class ThreeCube {
public:
    ThreeCube() = default;
    explicit ThreeCube(FieldSpec spec) : spec_(spec) {}

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t dim() const noexcept { return spec_.d(); }

    std::uint8_t at(std::size_t i1, std::size_t i2, std::size_t i3) const noexcept {
        return e_[(i1 * kMaxDim + i2) * kMaxDim + i3];
    }
    std::uint8_t& at(std::size_t i1, std::size_t i2, std::size_t i3) noexcept {
        return e_[(i1 * kMaxDim + i2) * kMaxDim + i3];
    }

    /// Right-multiplication operators of the product this cube defines.
    RightOps right_ops() const {
        RightOps ops(spec_);
        for (std::size_t i2 = 0; i2 < dim(); ++i2) {
            Matrix& m = ops.op(i2);
            m = Matrix(spec_);
            for (std::size_t i1 = 0; i1 < dim(); ++i1)
                for (std::size_t i3 = 0; i3 < dim(); ++i3) m.at(i3, i1) = at(i1, i2, i3);
        }
        return ops;
    }

    static ThreeCube from_ops(const RightOps& ops) {
        ThreeCube c(ops.spec());
        for (std::size_t i1 = 0; i1 < c.dim(); ++i1)
            for (std::size_t i2 = 0; i2 < c.dim(); ++i2)
                for (std::size_t i3 = 0; i3 < c.dim(); ++i3) c.at(i1, i2, i3) = ops.op(i2).at(i3, i1);
        return c;
    }

    friend bool operator==(const ThreeCube& a, const ThreeCube& b) noexcept {
        return a.spec_ == b.spec_ && a.e_ == b.e_;
    }

private:
    FieldSpec spec_;
    std::array<std::uint8_t, kMaxDim * kMaxDim * kMaxDim> e_{};
};

inline ThreeCube cube_from_set(const StandardSet& s) { return ThreeCube::from_ops(s.ops()); }

inline bool has_identity_slices(const ThreeCube& c) {
    for (std::size_t j = 0; j < c.dim(); ++j)
        for (std::size_t k = 0; k < c.dim(); ++k) {
            const std::uint8_t delta = j == k ? 1 : 0;
            if (c.at(0, j, k) != delta || c.at(j, 0, k) != delta) return false;
        }
    return true;
}

/// Throws NoIdentity when x_1 is not a two-sided identity of the cube.
inline StandardSet set_from_cube(const ThreeCube& c) {
    if (!has_identity_slices(c)) throw NoIdentity();
    const RightOps ops = c.right_ops();
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < c.dim(); ++i) mats.push_back(ops.op(i));
    return validate_standard_set(mats);
}

/// Permutation of {0, 1, 2}; image(k) is sigma(k).
class PermS3 {
public:
    constexpr PermS3() = default;
    constexpr PermS3(std::uint8_t a, std::uint8_t b, std::uint8_t c) : img_{a, b, c} {}

    static constexpr PermS3 identity() { return {0, 1, 2}; }
    /// Transpositions and 3-cycles in 1-based cycle notation.
    static constexpr PermS3 swap12() { return {1, 0, 2}; }
    static constexpr PermS3 swap13() { return {2, 1, 0}; }
    static constexpr PermS3 swap23() { return {0, 2, 1}; }
    static constexpr PermS3 cycle123() { return {1, 2, 0}; }
    static constexpr PermS3 cycle132() { return {2, 0, 1}; }

    static constexpr std::array<PermS3, 6> all() {
        return {identity(), swap12(), swap13(), swap23(), cycle123(), cycle132()};
    }

    constexpr std::uint8_t operator()(std::size_t k) const { return img_[k]; }

    /// (a * b)(k) = a(b(k)).
    friend constexpr PermS3 operator*(PermS3 a, PermS3 b) { return {a(b(0)), a(b(1)), a(b(2))}; }

    constexpr PermS3 inverse() const {
        PermS3 r;
        for (std::uint8_t k = 0; k < 3; ++k) r.img_[img_[k]] = k;
        return r;
    }

    std::string name() const {
        if (*this == identity()) return "id";
        if (*this == swap12()) return "(12)";
        if (*this == swap13()) return "(13)";
        if (*this == swap23()) return "(23)";
        if (*this == cycle123()) return "(123)";
        return "(132)";
    }

    friend constexpr bool operator==(const PermS3&, const PermS3&) = default;

private:
    std::array<std::uint8_t, 3> img_{0, 1, 2};
};

/// Output entry (i1, i2, i3) is the input entry (i_sigma(1), i_sigma(2), i_sigma(3)).
inline ThreeCube sigma_transform(const ThreeCube& c, PermS3 sigma) {
    ThreeCube out(c.spec());
    const std::size_t d = c.dim();
    std::array<std::size_t, 3> i{};
    for (i[0] = 0; i[0] < d; ++i[0])
        for (i[1] = 0; i[1] < d; ++i[1])
            for (i[2] = 0; i[2] < d; ++i[2]) out.at(i[0], i[1], i[2]) = c.at(i[sigma(0)], i[sigma(1)], i[sigma(2)]);
    return out;
}

/// Three invertible matrices acting on the three cube indices.
struct IsotopyTriple {
    Matrix f1, f2, f3;
};

/// ([F1, F2, F3] x C)_{i1 i2 i3} = sum F1_{i1 x1} F2_{i2 x2} F3_{i3 x3} C_{x1 x2 x3}.
inline ThreeCube isotopy_apply(const ThreeCube& c, const IsotopyTriple& t) {
    const FieldSpec f = c.spec();
    const std::size_t d = c.dim();
    ThreeCube a(f), b(f), out(f);
    for (std::size_t i1 = 0; i1 < d; ++i1)
        for (std::size_t x2 = 0; x2 < d; ++x2)
            for (std::size_t x3 = 0; x3 < d; ++x3) {
                std::uint32_t s = 0;
                for (std::size_t x1 = 0; x1 < d; ++x1) s += std::uint32_t{t.f1.at(i1, x1)} * c.at(x1, x2, x3);
                a.at(i1, x2, x3) = static_cast<std::uint8_t>(s % f.p());
            }
    for (std::size_t i1 = 0; i1 < d; ++i1)
        for (std::size_t i2 = 0; i2 < d; ++i2)
            for (std::size_t x3 = 0; x3 < d; ++x3) {
                std::uint32_t s = 0;
                for (std::size_t x2 = 0; x2 < d; ++x2) s += std::uint32_t{t.f2.at(i2, x2)} * a.at(i1, x2, x3);
                b.at(i1, i2, x3) = static_cast<std::uint8_t>(s % f.p());
            }
    for (std::size_t i1 = 0; i1 < d; ++i1)
        for (std::size_t i2 = 0; i2 < d; ++i2)
            for (std::size_t i3 = 0; i3 < d; ++i3) {
                std::uint32_t s = 0;
                for (std::size_t x3 = 0; x3 < d; ++x3) s += std::uint32_t{t.f3.at(i3, x3)} * b.at(i1, i2, x3);
                out.at(i1, i2, i3) = static_cast<std::uint8_t>(s % f.p());
            }
    return out;
}

/// Same algebra in the basis x'_i = sum_j P_ij x_j. Row 1 of P must be e_1 so that
/// the identity stays the first basis vector.
inline StandardSet basis_change(const StandardSet& s, const Matrix& p) {
    const Matrix p_inv_t = inverse(p).transpose();
    const ThreeCube c = isotopy_apply(cube_from_set(s), {p, p, p_inv_t});
    if (!has_identity_slices(c)) throw IdentityNotPreserved();
    return StandardSet::trusted(c.right_ops());
}

/// Rewrites an algebra with identity `unit` in a basis whose columns are `basis`
/// (basis[0] == unit); the result's A_i is the matrix of right multiplication by basis[i].
inline StandardSet rebase(const RightOps& ops, std::span<const Vector> basis) {
    const FieldSpec f = ops.spec();
    const Matrix p = Matrix::from_columns(f, basis);
    const Matrix p_inv = inverse(p);
    RightOps out(f);
    for (std::size_t i = 0; i < f.d(); ++i) out.op(i) = p_inv * ops.right(basis[i]) * p;
    return StandardSet::trusted(std::move(out));
}

/// Basis starting with `first`, completed greedily from e_1, ..., e_d.
inline std::vector<Vector> complete_basis(const Vector& first) {
    const FieldSpec f = first.spec();
    std::vector<Vector> basis{first};
    for (std::size_t k = 0; k < f.d() && basis.size() < f.d(); ++k) {
        basis.push_back(Vector::unit(f, k));
        if (rank_of_columns(f, basis) < basis.size()) basis.pop_back();
    }
    return basis;
}

/// Right operators of a o b = R_z^{-1}(a) * L_y^{-1}(b) for the product `ops`.
/// The identity of the new product is y * z.
inline RightOps principal_isotope_ops(const RightOps& ops, const Element& y, const Element& z) {
    const FieldSpec f = ops.spec();
    const Matrix rz_inv = inverse(ops.right(z));
    const Matrix ly_inv = inverse(ops.left(y));
    RightOps out(f);
    for (std::size_t k = 0; k < f.d(); ++k) out.op(k) = ops.right(ly_inv.column(k)) * rz_inv;
    return out;
}

/// The principal isotope D_(y,z), rebased so that x_1 = y * z.
inline StandardSet principal_isotope(const StandardSet& s, const Element& y, const Element& z) {
    const RightOps iso = principal_isotope_ops(s.ops(), y, z);
    const Element unit = s.ops().multiply(y, z);
    const auto basis = complete_basis(unit);
    return rebase(iso, basis);
}

/// Semifield isotopic to the presemifield `c`, using the principal isotope with y = z = u.
inline StandardSet unitalize(const ThreeCube& c, const Element& u) {
    const RightOps ops = c.right_ops();
    const RightOps iso = principal_isotope_ops(ops, u, u);
    const auto basis = complete_basis(ops.multiply(u, u));
    return rebase(iso, basis);
}

inline StandardSet unitalize(const ThreeCube& c) { return unitalize(c, Vector::unit(c.spec(), 0)); }

struct Predicates {
    bool commutative = false;
    bool associative = false;
};

inline bool is_commutative(const ThreeCube& c) {
    for (std::size_t i = 0; i < c.dim(); ++i)
        for (std::size_t j = i + 1; j < c.dim(); ++j)
            for (std::size_t k = 0; k < c.dim(); ++k)
                if (c.at(i, j, k) != c.at(j, i, k)) return false;
    return true;
}

inline bool is_associative(const StandardSet& s) {
    const FieldSpec f = s.spec();
    const RightOps& ops = s.ops();
    for (std::size_t i = 0; i < f.d(); ++i)
        for (std::size_t j = 0; j < f.d(); ++j) {
            const Element xij = ops.multiply(Vector::unit(f, i), Vector::unit(f, j));
            for (std::size_t k = 0; k < f.d(); ++k) {
                const Element xk = Vector::unit(f, k);
                if (!(ops.multiply(xij, xk) == ops.multiply(Vector::unit(f, i), ops.multiply(Vector::unit(f, j), xk))))
                    return false;
            }
        }
    return true;
}

inline Predicates predicates(const StandardSet& s) {
    return {is_commutative(cube_from_set(s)), is_associative(s)};
}

}  // namespace semifield
