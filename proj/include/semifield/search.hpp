#pragma once

// Backtracking enumeration of standard sets (I, A_2, A_3, ..., A_d) with a
// fixed primitive companion matrix A_2, filling the remaining matrices one
// column at a time.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "semifield/gf_matrix.hpp"
#include "semifield/semifield.hpp"

namespace semifield {

/// A matrix whose first k columns are filled.
struct PartialMatrix {
    FieldSpec spec;
    std::size_t k = 0;
    std::array<Vector, kMaxDim> columns{};

    Matrix to_matrix() const {
        Matrix m(spec);
        for (std::size_t c = 0; c < k; ++c) m.set_column(c, columns[c]);
        return m;
    }
};

struct SearchConfig {
    FieldSpec spec;
    Matrix a2;
    /// Restricts the search to one value of column 2 of A_3 (by vector code).
    std::optional<std::uint64_t> a3_column;

    static SearchConfig for_poly(const Poly& f, std::optional<std::uint64_t> a3_column = std::nullopt) {
        return {f.spec(), companion_matrix(f), a3_column};
    }
};

inline void validate_config(const SearchConfig& cfg) {
    if (!(cfg.a2.spec() == cfg.spec)) throw InvalidSearchConfig("A_2 has a different field spec");
    if (!is_primitive_poly(char_poly(cfg.a2)))
        throw InvalidSearchConfig("characteristic polynomial of A_2 is not primitive");
    if (!(cfg.a2.column(0) == Vector::unit(cfg.spec, 1))) throw InvalidSearchConfig("first column of A_2 is not e_2");
    if (cfg.a3_column && *cfg.a3_column >= cfg.spec.order()) throw InvalidSearchConfig("A_3 shard column out of range");
}

/// Columns c such that [M | c] extends to full column rank k+1 in every combination
/// sum_i lambda_i trunc(A_i) + [M | c]. Combinations where M has coefficient 0 are
/// assumed certified when `completed` was built. Returned in ascending code order.
inline std::vector<Vector> valid_columns(std::span<const Matrix> completed, const PartialMatrix& m) {
    const FieldSpec f = m.spec;
    const std::size_t k = m.k;
    const std::size_t nmat = completed.size();
    std::vector<std::uint8_t> forbidden(f.order(), 0);

    std::uint64_t ncombos = 1;
    for (std::size_t i = 0; i < nmat; ++i) ncombos *= f.p();

    std::vector<Vector> span;
    for (std::uint64_t t = 0; t < ncombos; ++t) {
        std::array<std::uint8_t, kMaxDim> lam{};
        std::uint64_t x = t;
        for (std::size_t i = 0; i < nmat; ++i) {
            lam[i] = static_cast<std::uint8_t>(x % f.p());
            x /= f.p();
        }
        // First k columns of the combination and the fixed part of column k+1.
        std::array<Vector, kMaxDim> cols;
        for (std::size_t c = 0; c < k; ++c) cols[c] = m.columns[c];
        Vector w(f);
        for (std::size_t i = 0; i < nmat; ++i) {
            if (lam[i] == 0) continue;
            for (std::size_t c = 0; c < k; ++c) cols[c] += lam[i] * completed[i].column(c);
            w += lam[i] * completed[i].column(k);
        }
        span.assign(1, Vector(f));
        for (std::size_t c = 0; c < k; ++c) {
            const std::size_t base = span.size();
            for (std::uint32_t s = 1; s < f.p(); ++s)
                for (std::size_t j = 0; j < base; ++j) span.push_back(span[j] + s * cols[c]);
        }
        for (const auto& v : span) forbidden[(v - w).code()] = 1;
    }

    std::vector<Vector> out;
    for (std::uint64_t code = 0; code < f.order(); ++code)
        if (!forbidden[code]) out.push_back(Vector::from_code(f, code));
    return out;
}

namespace detail {

/// Vector arithmetic on base-p codes, table driven for small orders.
class CodeArith {
public:
    explicit CodeArith(FieldSpec f) : f_(f), n_(f.order()) {
        if (n_ > kTableLimit) return;
        add_.resize(n_ * n_);
        sub_.resize(n_ * n_);
        for (std::uint64_t a = 0; a < n_; ++a) {
            const Vector va = Vector::from_code(f, a);
            for (std::uint64_t b = 0; b < n_; ++b) {
                const Vector vb = Vector::from_code(f, b);
                add_[a * n_ + b] = static_cast<std::uint32_t>((va + vb).code());
                sub_[a * n_ + b] = static_cast<std::uint32_t>((va - vb).code());
            }
        }
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (!add_.empty()) return add_[a * n_ + b];
        return static_cast<std::uint32_t>((Vector::from_code(f_, a) + Vector::from_code(f_, b)).code());
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        if (!sub_.empty()) return sub_[a * n_ + b];
        return static_cast<std::uint32_t>((Vector::from_code(f_, a) - Vector::from_code(f_, b)).code());
    }
    std::uint64_t order() const noexcept { return n_; }

private:
    static constexpr std::uint64_t kTableLimit = 1024;
    FieldSpec f_;
    std::uint64_t n_;
    std::vector<std::uint32_t> add_, sub_;
};

/// Depth-first search with per-combination column spans kept incrementally.
/// Produces the same candidate lists as valid_columns.
class Searcher {
public:
    Searcher(const SearchConfig& cfg, const std::function<void(const StandardSet&)>& sink)
        : cfg_(cfg), f_(cfg.spec), arith_(cfg.spec), stamp_(cfg.spec.order(), 0), sink_(sink) {}

    void run() {
        completed_.push_back(Matrix::identity(f_));
        completed_.push_back(cfg_.a2);
        levels_.resize(f_.d() + 1);
        complete();
    }

private:
    // State for building matrix number m (0-based) from completed_[0..m).
    struct Level {
        std::size_t ncombos = 0;
        std::vector<std::uint32_t> fixed;   // fixed[j * ncombos + t]: column j of sum_i lambda_i A_i
        std::vector<std::vector<std::uint32_t>> spans;  // spans[k]: ncombos blocks of p^k codes
        std::vector<std::vector<std::uint32_t>> candidates;
        std::array<std::uint32_t, kMaxDim> columns{};
    };

    void complete() {
        const std::size_t m = completed_.size();
        const std::size_t d = f_.d();
        if (m == d) {
            // Full re-check: a pruning bug must surface here, not as an undercount.
            sink_(validate_standard_set(completed_));
            return;
        }
        Level& lv = levels_[m];
        lv.ncombos = 1;
        for (std::size_t i = 0; i < m; ++i) lv.ncombos *= f_.p();
        lv.fixed.assign(d * lv.ncombos, 0);
        for (std::size_t t = 0; t < lv.ncombos; ++t) {
            std::uint64_t x = t;
            std::array<Vector, kMaxDim> cols;
            for (std::size_t j = 0; j < d; ++j) cols[j] = Vector(f_);
            for (std::size_t i = 0; i < m; ++i) {
                const auto lam = static_cast<std::uint32_t>(x % f_.p());
                x /= f_.p();
                if (lam == 0) continue;
                for (std::size_t j = 0; j < d; ++j) cols[j] += lam * completed_[i].column(j);
            }
            for (std::size_t j = 0; j < d; ++j) lv.fixed[j * lv.ncombos + t] = static_cast<std::uint32_t>(cols[j].code());
        }
        lv.spans.assign(d + 1, {});
        lv.candidates.assign(d + 1, {});
        lv.spans[0].assign(lv.ncombos, 0);
        lv.columns[0] = static_cast<std::uint32_t>(Vector::unit(f_, m).code());
        extend_span(lv, 0);
        complete_columns(lv, m, 1);
    }

    // spans[k+1] from spans[k] and column k of every combination.
    void extend_span(Level& lv, std::size_t k) {
        const std::size_t block = lv.spans[k].size() / lv.ncombos;
        auto& next = lv.spans[k + 1];
        next.resize(lv.ncombos * block * f_.p());
        for (std::size_t t = 0; t < lv.ncombos; ++t) {
            const std::uint32_t col = arith_.add(lv.fixed[k * lv.ncombos + t], lv.columns[k]);
            const std::uint32_t* src = lv.spans[k].data() + t * block;
            std::uint32_t* dst = next.data() + t * block * f_.p();
            std::copy(src, src + block, dst);
            for (std::size_t s = 1; s < f_.p(); ++s)
                for (std::size_t j = 0; j < block; ++j) dst[s * block + j] = arith_.add(dst[(s - 1) * block + j], col);
        }
    }

    void complete_columns(Level& lv, std::size_t m, std::size_t k) {
        const std::size_t d = f_.d();
        if (k == d) {
            Matrix a(f_);
            for (std::size_t c = 0; c < d; ++c) a.set_column(c, Vector::from_code(f_, lv.columns[c]));
            completed_.push_back(a);
            complete();
            completed_.pop_back();
            return;
        }
        ++epoch_;
        const auto& span = lv.spans[k];
        const std::size_t block = span.size() / lv.ncombos;
        for (std::size_t t = 0; t < lv.ncombos; ++t) {
            const std::uint32_t w = lv.fixed[k * lv.ncombos + t];
            const std::uint32_t* s = span.data() + t * block;
            for (std::size_t j = 0; j < block; ++j) stamp_[arith_.sub(s[j], w)] = epoch_;
        }
        auto& cands = lv.candidates[k];
        cands.clear();
        const bool shard_level = cfg_.a3_column && m == 2 && k == 1;
        for (std::uint32_t code = 0; code < arith_.order(); ++code) {
            if (stamp_[code] == epoch_) continue;
            if (shard_level && code != *cfg_.a3_column) continue;
            cands.push_back(code);
        }
        for (const std::uint32_t c : cands) {
            lv.columns[k] = c;
            extend_span(lv, k);
            complete_columns(lv, m, k + 1);
        }
    }

    const SearchConfig& cfg_;
    FieldSpec f_;
    CodeArith arith_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    const std::function<void(const StandardSet&)>& sink_;
    std::vector<Matrix> completed_;
    std::vector<Level> levels_;
};

/// Straightforward search built directly on valid_columns; reference for tests.
class ReferenceSearcher {
public:
    ReferenceSearcher(const SearchConfig& cfg, const std::function<void(const StandardSet&)>& sink)
        : cfg_(cfg), f_(cfg.spec), sink_(sink) {}

    void run() {
        completed_.push_back(Matrix::identity(f_));
        completed_.push_back(cfg_.a2);
        complete();
    }

private:
    void complete() {
        const std::size_t m = completed_.size();
        if (m == f_.d()) {
            sink_(validate_standard_set(completed_));
            return;
        }
        PartialMatrix pm{f_, 1, {}};
        pm.columns[0] = Vector::unit(f_, m);
        complete_columns(pm);
    }

    void complete_columns(PartialMatrix& pm) {
        if (pm.k == f_.d()) {
            completed_.push_back(pm.to_matrix());
            complete();
            completed_.pop_back();
            return;
        }
        const bool shard_level = cfg_.a3_column && completed_.size() == 2 && pm.k == 1;
        for (const Vector& c : valid_columns(completed_, pm)) {
            if (shard_level && c.code() != *cfg_.a3_column) continue;
            pm.columns[pm.k++] = c;
            complete_columns(pm);
            --pm.k;
        }
    }

    const SearchConfig& cfg_;
    FieldSpec f_;
    const std::function<void(const StandardSet&)>& sink_;
    std::vector<Matrix> completed_;
};

}  // namespace detail

/// Emits every standard set with A_2 = cfg.a2, depth first in ascending
/// (A_3, ..., A_d) code order.
inline void complete_search(const SearchConfig& cfg, const std::function<void(const StandardSet&)>& sink) {
    validate_config(cfg);
    detail::Searcher(cfg, sink).run();
}

/// Same contract as complete_search, driven by valid_columns at every node.
inline void complete_search_reference(const SearchConfig& cfg, const std::function<void(const StandardSet&)>& sink) {
    validate_config(cfg);
    detail::ReferenceSearcher(cfg, sink).run();
}

inline std::vector<StandardSet> complete_search(const SearchConfig& cfg) {
    std::vector<StandardSet> out;
    complete_search(cfg, [&](const StandardSet& s) { out.push_back(s); });
    return out;
}

/// Values of column 2 of A_3 that survive the first pruning step; each one is an
/// independent shard of the search tree. Empty when d = 2 (there is no A_3).
inline std::vector<std::uint64_t> shard_columns(const SearchConfig& cfg) {
    validate_config(cfg);
    if (cfg.spec.d() < 3) return {};
    const std::array<Matrix, 2> completed{Matrix::identity(cfg.spec), cfg.a2};
    PartialMatrix pm{cfg.spec, 1, {}};
    pm.columns[0] = Vector::unit(cfg.spec, 2);
    std::vector<std::uint64_t> out;
    for (const auto& c : valid_columns(completed, pm)) out.push_back(c.code());
    return out;
}

/// Runs complete_search for every primitive polynomial; sink receives the 1-based
/// polynomial index in primitive_polys order.
inline void search_all(FieldSpec spec, const std::function<void(std::size_t, const StandardSet&)>& sink) {
    const auto polys = primitive_polys(spec);
    for (std::size_t i = 0; i < polys.size(); ++i)
        complete_search(SearchConfig::for_poly(polys[i]), [&](const StandardSet& s) { sink(i + 1, s); });
}

}  // namespace semifield
