#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace semifield;
using semifield::testing::kF81;

namespace {

using Tuple = std::vector<std::uint64_t>;

// Every nonzero combination of `mats` with a nonzero coefficient on the last one is invertible.
bool last_combinations_invertible(FieldSpec f, const std::vector<Matrix>& mats) {
    const std::size_t n = mats.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) total *= f.p();
    for (std::uint32_t last = 1; last < f.p(); ++last)
        for (std::uint64_t t = 0; t < total; ++t) {
            Matrix sum = last * mats.back();
            std::uint64_t x = t;
            for (std::size_t i = 0; i + 1 < n; ++i, x /= f.p())
                sum += static_cast<std::uint32_t>(x % f.p()) * mats[i];
            if (!is_invertible(sum)) return false;
        }
    return true;
}

std::vector<Matrix> matrices_with_first_column(FieldSpec f, std::size_t col_index) {
    std::vector<Matrix> out;
    for (std::uint64_t code = 0; code < f.code_space(); ++code) out.push_back(decode_matrix({col_index, code}, f));
    return out;
}

// All (A_3, ..., A_d) completing (I, A_2) by exhaustive enumeration.
std::set<Tuple> brute_force_completions(FieldSpec f, const Matrix& a2) {
    std::vector<std::vector<Matrix>> candidates;
    for (std::size_t i = 3; i <= f.d(); ++i) {
        std::vector<Matrix> keep;
        for (const auto& m : matrices_with_first_column(f, i))
            if (last_combinations_invertible(f, {Matrix::identity(f), a2, m})) keep.push_back(m);
        candidates.push_back(std::move(keep));
    }
    std::set<Tuple> out;
    std::vector<Matrix> chosen{Matrix::identity(f), a2};
    std::function<void(std::size_t)> rec = [&](std::size_t level) {
        if (level == candidates.size()) {
            Tuple t;
            for (std::size_t i = 2; i < chosen.size(); ++i) t.push_back(encode_matrix(chosen[i]).value);
            out.insert(t);
            return;
        }
        for (const auto& m : candidates[level]) {
            chosen.push_back(m);
            if (last_combinations_invertible(f, chosen)) rec(level + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

Tuple tail_codes(const StandardSet& s) {
    const auto c = s.codes();
    return Tuple(c.begin() + 1, c.end());
}

std::vector<Tuple> run(const SearchConfig& cfg, bool reference) {
    std::vector<Tuple> out;
    auto sink = [&](const StandardSet& s) { out.push_back(tail_codes(s)); };
    if (reference)
        complete_search_reference(cfg, sink);
    else
        complete_search(cfg, sink);
    return out;
}

}  // namespace

class ToyScale : public ::testing::TestWithParam<std::pair<std::uint32_t, std::uint32_t>> {};

TEST_P(ToyScale, SearchEqualsBruteForce) {
    const FieldSpec f(GetParam().first, GetParam().second);
    for (const Poly& poly : primitive_polys(f)) {
        const auto cfg = SearchConfig::for_poly(poly);
        const auto fast = run(cfg, false);
        const std::set<Tuple> fast_set(fast.begin(), fast.end());
        EXPECT_EQ(fast_set.size(), fast.size()) << "duplicates for " << to_string(poly);
        EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
        EXPECT_EQ(fast_set, brute_force_completions(f, companion_matrix(poly))) << to_string(poly);
        EXPECT_EQ(run(cfg, true), fast);
    }
}

INSTANTIATE_TEST_SUITE_P(Fields, ToyScale,
                         ::testing::Values(std::pair{2u, 2u}, std::pair{3u, 2u}, std::pair{5u, 2u}, std::pair{2u, 3u},
                                           std::pair{3u, 3u}, std::pair{2u, 4u}));

TEST(Search, FiveCubedFirstPolynomialsAgainstBruteForce) {
    const FieldSpec f(5, 3);
    const auto polys = primitive_polys(f);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto fast = run(SearchConfig::for_poly(polys[i]), false);
        EXPECT_EQ(std::set<Tuple>(fast.begin(), fast.end()), brute_force_completions(f, companion_matrix(polys[i])));
    }
}

TEST(Search, RejectedColumnsHaveNoCompletion) {
    for (auto [p, d] : {std::pair{2u, 4u}, {3u, 3u}}) {
        const FieldSpec f(p, d);
        for (const Poly& poly : primitive_polys(f)) {
            const Matrix a2 = companion_matrix(poly);
            const std::vector<Matrix> base{Matrix::identity(f), a2};
            PartialMatrix pm{f, 1, {}};
            pm.columns[0] = Vector::unit(f, 2);
            std::set<std::uint64_t> accepted;
            for (const auto& c : valid_columns(base, pm)) accepted.insert(c.code());
            for (const auto& m : matrices_with_first_column(f, 3)) {
                if (accepted.count(m.column(1).code())) continue;
                ASSERT_FALSE(last_combinations_invertible(f, {base[0], base[1], m})) << m;
            }
        }
    }
}

TEST(Search, ValidColumnsAreExactAtLastColumn) {
    // Given an accepted prefix, the accepted last columns are exactly the completions.
    const FieldSpec f(3, 3);
    const Matrix a2 = companion_matrix(primitive_polys(f).front());
    const std::vector<Matrix> base{Matrix::identity(f), a2};
    PartialMatrix first{f, 1, {}};
    first.columns[0] = Vector::unit(f, 2);
    const auto prefixes = valid_columns(base, first);
    ASSERT_FALSE(prefixes.empty());
    for (const Vector& c2 : prefixes) {
        PartialMatrix pm{f, 2, {}};
        pm.columns[0] = Vector::unit(f, 2);
        pm.columns[1] = c2;
        std::set<std::uint64_t> accepted;
        for (const auto& c : valid_columns(base, pm)) accepted.insert(c.code());
        for (std::uint64_t c3 = 0; c3 < f.order(); ++c3) {
            Matrix m = pm.to_matrix();
            m.set_column(2, Vector::from_code(f, c3));
            EXPECT_EQ(accepted.count(c3) == 1, last_combinations_invertible(f, {base[0], base[1], m}));
        }
    }
}

TEST(Search, ReferenceAgreesOnOrderEightyOneShard) {
    const auto poly = primitive_polys(kF81)[5];
    const auto shards = shard_columns(SearchConfig::for_poly(poly));
    ASSERT_FALSE(shards.empty());
    for (std::size_t i : {std::size_t{0}, shards.size() / 2}) {
        const auto cfg = SearchConfig::for_poly(poly, shards[i]);
        EXPECT_EQ(run(cfg, true), run(cfg, false));
    }
}

TEST(Search, ShardsPartitionTheSearch) {
    const auto poly = primitive_polys(kF81)[0];
    const auto full = run(SearchConfig::for_poly(poly), false);
    std::vector<Tuple> joined;
    for (auto c : shard_columns(SearchConfig::for_poly(poly))) {
        const auto part = run(SearchConfig::for_poly(poly, c), false);
        for (const auto& t : part) EXPECT_EQ(decode_matrix({3, t[0]}, kF81).column(1).code(), c);
        joined.insert(joined.end(), part.begin(), part.end());
    }
    EXPECT_EQ(joined, full);
}

TEST(Search, OrderEightyOneCounts) {
    const auto polys = primitive_polys(kF81);
    // x^4+x+2 and x^4+x^3+x^2+2x+2.
    std::size_t n1 = 0, n4 = 0;
    complete_search(SearchConfig::for_poly(polys[0]), [&](const StandardSet& s) {
        EXPECT_EQ(char_poly(s.matrix(1)), polys[0]);
        ++n1;
    });
    complete_search(SearchConfig::for_poly(polys[3]), [&](const StandardSet&) { ++n4; });
    EXPECT_EQ(n1, 6811u);
    EXPECT_EQ(n4, 7866u);
}

TEST(Search, EmittedSetsValidate) {
    const FieldSpec f(2, 4);
    for (const Poly& poly : primitive_polys(f))
        complete_search(SearchConfig::for_poly(poly), [&](const StandardSet& s) {
            std::vector<Matrix> mats;
            for (std::size_t i = 0; i < 4; ++i) mats.push_back(s.matrix(i));
            EXPECT_NO_THROW(validate_standard_set(mats));
            EXPECT_EQ(s.matrix(1), companion_matrix(poly));
        });
}

TEST(Search, ConfigValidation) {
    EXPECT_THROW(complete_search(SearchConfig{kF81, Matrix::identity(kF81), std::nullopt}), InvalidSearchConfig);
    const Matrix nonprim = companion_matrix(Poly(kF81, {1, 0, 0, 0}));  // x^4 + 1
    EXPECT_THROW(complete_search(SearchConfig{kF81, nonprim, std::nullopt}), InvalidSearchConfig);
    EXPECT_THROW(complete_search(SearchConfig::for_poly(primitive_polys(kF81)[0], 81)), InvalidSearchConfig);
    EXPECT_TRUE(shard_columns(SearchConfig::for_poly(primitive_polys(FieldSpec(3, 2))[0])).empty());
}

TEST(Search, SearchAllUsesOneBasedIndices) {
    const FieldSpec f(2, 3);
    std::set<std::size_t> seen;
    search_all(f, [&](std::size_t i, const StandardSet& s) {
        seen.insert(i);
        EXPECT_EQ(char_poly(s.matrix(1)), primitive_polys(f)[i - 1]);
    });
    EXPECT_EQ(seen, (std::set<std::size_t>{1, 2}));
}
