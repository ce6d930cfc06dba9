#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace semifield;
using semifield::testing::kF81;
using semifield::testing::plane;

namespace {

InvalidStandardSet::Reason failure_reason(std::initializer_list<Matrix> mats) {
    try {
        validate_standard_set(mats);
    } catch (const InvalidStandardSet& e) {
        return e.reason();
    }
    ADD_FAILURE() << "expected InvalidStandardSet";
    return InvalidStandardSet::Reason::WrongShape;
}

// a*b straight from the cube: (a*b)_k = sum_{i,j} a_i b_j C[i][j][k].
Vector cube_product(const ThreeCube& c, const Vector& a, const Vector& b) {
    const FieldSpec f = c.spec();
    Vector out(f);
    for (std::size_t k = 0; k < f.d(); ++k) {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < f.d(); ++i)
            for (std::size_t j = 0; j < f.d(); ++j) s += std::uint32_t{a[i]} * b[j] * c.at(i, j, k);
        out[k] = static_cast<std::uint8_t>(s % f.p());
    }
    return out;
}

std::uint32_t dot(const Vector& a, const Vector& b) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::uint32_t{a[i]} * b[i];
    return s % a.spec().p();
}

// The trilinear form T(x, y, z) = <x * y, z>.
std::uint32_t trilinear(const ThreeCube& c, const Vector& x, const Vector& y, const Vector& z) {
    return dot(cube_product(c, x, y), z);
}

}  // namespace

TEST(StandardSet, FixturesValidate) {
    for (const auto& fx : plane_fixtures_81()) {
        const StandardSet s = semifield::testing::fixture_set(fx);
        EXPECT_EQ(s.matrix(0), Matrix::identity(kF81));
        for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.matrix(i).column(0), Vector::unit(kF81, i));
        EXPECT_EQ(s.codes(), std::vector<std::uint64_t>(fx.codes.begin(), fx.codes.end()));
    }
}

TEST(StandardSet, FourCodeFormAcceptsExplicitIdentity) {
    const StandardSet s = standard_set_from_codes(kF81, {59293, 19792, 8866, 186745});
    EXPECT_EQ(s, plane("I"));
    EXPECT_THROW(standard_set_from_codes(kF81, {19792, 8866}), ParseError);
}

TEST(StandardSet, RejectsWrongShape) {
    const Matrix i = Matrix::identity(kF81);
    EXPECT_EQ(failure_reason({i, i}), InvalidStandardSet::Reason::WrongShape);
    EXPECT_THROW(validate_standard_set(std::span<const Matrix>{}), InvalidStandardSet);
}

TEST(StandardSet, RejectsNonIdentityFirst) {
    const StandardSet s = plane("II");
    EXPECT_EQ(failure_reason({s.matrix(1), s.matrix(1), s.matrix(2), s.matrix(3)}),
              InvalidStandardSet::Reason::NotIdentityFirst);
}

TEST(StandardSet, RejectsBadFirstColumnWithIndex) {
    const StandardSet s = plane("II");
    try {
        validate_standard_set({s.matrix(0), s.matrix(1), s.matrix(3), s.matrix(2)});
        FAIL();
    } catch (const InvalidStandardSet& e) {
        EXPECT_EQ(e.reason(), InvalidStandardSet::Reason::BadFirstColumn);
        EXPECT_EQ(e.index(), 3u);
    }
}

TEST(StandardSet, RejectsSingularCombination) {
    // x^2 + 2 has the root 1 over GF(3), so A_2 - A_1 is singular.
    const FieldSpec f(3, 2);
    const Matrix a2 = companion_matrix(Poly(f, {2, 0}));
    try {
        validate_standard_set({Matrix::identity(f), a2});
        FAIL();
    } catch (const InvalidStandardSet& e) {
        EXPECT_EQ(e.reason(), InvalidStandardSet::Reason::SingularCombination);
        ASSERT_EQ(e.lambda().size(), 2u);
        const Matrix comb = e.lambda()[0] * Matrix::identity(f) + e.lambda()[1] * a2;
        EXPECT_FALSE(is_invertible(comb));
    }
    // x^2 + 1 is irreducible: (I, C) spans GF(9).
    EXPECT_NO_THROW(validate_standard_set({Matrix::identity(f), companion_matrix(Poly(f, {1, 0}))}));
}

TEST(StandardSet, RejectsRankOneDifference) {
    // A_4 differs from A_3 only in column 1, so A_4 - A_3 has rank 1.
    const StandardSet s = plane("I");
    Matrix bad = s.matrix(2);
    bad.set_column(0, Vector::unit(kF81, 3));  // A_4 equal to A_3 except column 1
    EXPECT_THROW(validate_standard_set({s.matrix(0), s.matrix(1), s.matrix(2), bad}), InvalidStandardSet);
}

TEST(Multiplication, IdentityAxioms) {
    std::mt19937_64 rng(21);
    for (const auto& fx : plane_fixtures_81()) {
        const StandardSet s = semifield::testing::fixture_set(fx);
        const Element e = s.identity();
        for (int t = 0; t < 40; ++t) {
            const Element a = semifield::testing::random_nonzero(kF81, rng);
            EXPECT_EQ(multiply(s, e, a), a);
            EXPECT_EQ(multiply(s, a, e), a);
        }
    }
}

TEST(Multiplication, BasisProductsAreColumns) {
    const StandardSet s = plane("VI");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_EQ(multiply(s, Vector::unit(kF81, i), Vector::unit(kF81, j)), s.matrix(j).column(i));
}

TEST(Multiplication, NoZeroDivisors) {
    for (const auto& fx : plane_fixtures_81()) {
        const StandardSet s = semifield::testing::fixture_set(fx);
        for (std::uint64_t a = 1; a < 81; ++a)
            for (std::uint64_t b = 1; b < 81; ++b)
                ASSERT_FALSE(multiply(s, Vector::from_code(kF81, a), Vector::from_code(kF81, b)).is_zero())
                    << fx.label << " " << a << " " << b;
    }
}

TEST(Multiplication, Bilinear) {
    std::mt19937_64 rng(22);
    const StandardSet s = plane("XI");
    for (int t = 0; t < 100; ++t) {
        const Element a = semifield::testing::random_nonzero(kF81, rng);
        const Element b = semifield::testing::random_nonzero(kF81, rng);
        const Element c = semifield::testing::random_nonzero(kF81, rng);
        EXPECT_EQ(multiply(s, a + b, c), multiply(s, a, c) + multiply(s, b, c));
        EXPECT_EQ(multiply(s, a, b + c), multiply(s, a, b) + multiply(s, a, c));
        EXPECT_EQ(multiply(s, 2 * a, b), 2 * multiply(s, a, b));
    }
}

TEST(Multiplication, FieldPlaneIsAssociativeByFullScan) {
    const StandardSet s = plane("I");
    for (std::uint64_t a = 1; a < 81; a += 3)
        for (std::uint64_t b = 1; b < 81; ++b)
            for (std::uint64_t c = 2; c < 81; c += 7) {
                const Element x = Vector::from_code(kF81, a), y = Vector::from_code(kF81, b), z = Vector::from_code(kF81, c);
                ASSERT_EQ(multiply(s, multiply(s, x, y), z), multiply(s, x, multiply(s, y, z)));
            }
}

TEST(Predicates, KnownPlanes) {
    EXPECT_TRUE(predicates(plane("I")).commutative);
    EXPECT_TRUE(predicates(plane("I")).associative);
    EXPECT_TRUE(predicates(plane("III")).commutative);
    EXPECT_FALSE(predicates(plane("III")).associative);
    for (const char* label : {"II", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"})
        EXPECT_FALSE(predicates(plane(label)).associative) << label;
}

TEST(ThreeCube, RoundTrip) {
    for (const auto& fx : plane_fixtures_81()) {
        const StandardSet s = semifield::testing::fixture_set(fx);
        const ThreeCube c = cube_from_set(s);
        EXPECT_TRUE(has_identity_slices(c));
        EXPECT_EQ(set_from_cube(c), s);
        EXPECT_EQ(c.at(0, 2, 1), s.matrix(2).at(1, 0));
    }
}

TEST(ThreeCube, ProductMatchesRightOperators) {
    std::mt19937_64 rng(23);
    const StandardSet s = plane("VIII");
    const ThreeCube c = cube_from_set(s);
    for (int t = 0; t < 50; ++t) {
        const Element a = semifield::testing::random_nonzero(kF81, rng);
        const Element b = semifield::testing::random_nonzero(kF81, rng);
        EXPECT_EQ(cube_product(c, a, b), multiply(s, a, b));
    }
}

TEST(ThreeCube, NoIdentityAfterSwap13) {
    const ThreeCube c = sigma_transform(cube_from_set(plane("II")), PermS3::swap13());
    EXPECT_FALSE(has_identity_slices(c));
    EXPECT_THROW(set_from_cube(c), NoIdentity);
}

TEST(PermS3, GroupStructure) {
    const auto all = PermS3::all();
    EXPECT_EQ(all[0], PermS3::identity());
    for (const auto a : all) {
        EXPECT_EQ(a * a.inverse(), PermS3::identity());
        for (const auto b : all)
            for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ((a * b)(k), a(b(k)));
    }
    EXPECT_EQ(PermS3::cycle123() * PermS3::cycle123(), PermS3::cycle132());
}

TEST(SigmaTransform, IdentityAndInvolutions) {
    const ThreeCube c = cube_from_set(plane("X"));
    EXPECT_EQ(sigma_transform(c, PermS3::identity()), c);
    for (const auto t : {PermS3::swap12(), PermS3::swap13(), PermS3::swap23()})
        EXPECT_EQ(sigma_transform(sigma_transform(c, t), t), c);
    EXPECT_EQ(sigma_transform(cube_from_set(plane("III")), PermS3::swap12()), cube_from_set(plane("III")));
}

TEST(SigmaTransform, Composition) {
    const ThreeCube c = cube_from_set(plane("IX"));
    for (const auto s : PermS3::all())
        for (const auto t : PermS3::all())
            EXPECT_EQ(sigma_transform(sigma_transform(c, s), t), sigma_transform(c, t * s));
}

TEST(SigmaTransform, TrilinearFormPermutes) {
    // Swapping the first two indices gives the opposite product.
    std::mt19937_64 rng(24);
    const ThreeCube c = cube_from_set(plane("VII"));
    const ThreeCube op = sigma_transform(c, PermS3::swap12());
    for (int t = 0; t < 50; ++t) {
        const Vector a = semifield::testing::random_nonzero(kF81, rng);
        const Vector b = semifield::testing::random_nonzero(kF81, rng);
        EXPECT_EQ(cube_product(op, a, b), cube_product(c, b, a));
    }
}

TEST(Isotopy, IdentityTripleIsNoOp) {
    const ThreeCube c = cube_from_set(plane("V"));
    const Matrix i = Matrix::identity(kF81);
    EXPECT_EQ(isotopy_apply(c, {i, i, i}), c);
}

TEST(Isotopy, ComposesComponentwise) {
    std::mt19937_64 rng(25);
    const ThreeCube c = cube_from_set(plane("IV"));
    for (int t = 0; t < 10; ++t) {
        IsotopyTriple g{semifield::testing::random_invertible(kF81, rng), semifield::testing::random_invertible(kF81, rng),
                        semifield::testing::random_invertible(kF81, rng)};
        IsotopyTriple h{semifield::testing::random_invertible(kF81, rng), semifield::testing::random_invertible(kF81, rng),
                        semifield::testing::random_invertible(kF81, rng)};
        EXPECT_EQ(isotopy_apply(isotopy_apply(c, g), h), isotopy_apply(c, {h.f1 * g.f1, h.f2 * g.f2, h.f3 * g.f3}));
    }
}

TEST(Isotopy, TrilinearFormTransformsByTransposes) {
    // T'(x, y, z) = T(F1^t x, F2^t y, F3^t z).
    std::mt19937_64 rng(26);
    const ThreeCube c = cube_from_set(plane("II"));
    const IsotopyTriple t{semifield::testing::random_invertible(kF81, rng),
                          semifield::testing::random_invertible(kF81, rng),
                          semifield::testing::random_invertible(kF81, rng)};
    const ThreeCube out = isotopy_apply(c, t);
    for (int k = 0; k < 50; ++k) {
        const Vector x = semifield::testing::random_nonzero(kF81, rng);
        const Vector y = semifield::testing::random_nonzero(kF81, rng);
        const Vector z = semifield::testing::random_nonzero(kF81, rng);
        EXPECT_EQ(trilinear(out, x, y, z), trilinear(c, t.f1.transpose() * x, t.f2.transpose() * y, t.f3.transpose() * z));
    }
}

TEST(Isotopy, CommutesWithSigma) {
    // ([F1,F2,F3] x C)^sigma = [F_s(1), F_s(2), F_s(3)] x C^sigma with s = sigma^{-1}.
    std::mt19937_64 rng(27);
    for (const auto& fx : plane_fixtures_81()) {
        const ThreeCube c = cube_from_set(semifield::testing::fixture_set(fx));
        for (int t = 0; t < 10; ++t) {
            const std::array<Matrix, 3> fs{semifield::testing::random_invertible(kF81, rng),
                                           semifield::testing::random_invertible(kF81, rng),
                                           semifield::testing::random_invertible(kF81, rng)};
            for (const auto sigma : PermS3::all()) {
                const ThreeCube lhs = sigma_transform(isotopy_apply(c, {fs[0], fs[1], fs[2]}), sigma);
                const PermS3 inv = sigma.inverse();
                const ThreeCube rhs = isotopy_apply(sigma_transform(c, sigma), {fs[inv(0)], fs[inv(1)], fs[inv(2)]});
                ASSERT_EQ(lhs, rhs) << fx.label << " " << sigma.name();
            }
        }
    }
}

TEST(BasisChange, IdentityAndCharPolyInvariance) {
    const StandardSet s = plane("XII");
    EXPECT_EQ(basis_change(s, Matrix::identity(kF81)), s);
    std::mt19937_64 rng(28);
    for (int t = 0; t < 30; ++t) {
        const Matrix p = semifield::testing::random_admissible(kF81, rng);
        const StandardSet b = basis_change(s, p);
        // New basis vector i is row i of P, i.e. column i of P^t.
        const Matrix pt = p.transpose();
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_EQ(char_poly(b.matrix(i)), char_poly(s.ops().right(pt.column(i))));
        // The product of new basis vectors, expressed in the old basis, agrees.
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const Vector new_coords = multiply(b, Vector::unit(kF81, i), Vector::unit(kF81, j));
                EXPECT_EQ(pt * new_coords, multiply(s, pt.column(i), pt.column(j)));
            }
    }
}

TEST(BasisChange, RejectsMovedIdentity) {
    Matrix p = Matrix::identity(kF81);
    p.at(0, 1) = 1;
    EXPECT_THROW(basis_change(plane("II"), p), IdentityNotPreserved);
}

TEST(PrincipalIsotope, IdentityIsYTimesZ) {
    std::mt19937_64 rng(29);
    const StandardSet s = plane("VI");
    for (int t = 0; t < 30; ++t) {
        const Element y = semifield::testing::random_nonzero(kF81, rng);
        const Element z = semifield::testing::random_nonzero(kF81, rng);
        const RightOps iso = principal_isotope_ops(s.ops(), y, z);
        const Element e = multiply(s, y, z);
        for (int k = 0; k < 10; ++k) {
            const Element a = semifield::testing::random_nonzero(kF81, rng);
            EXPECT_EQ(iso.multiply(e, a), a);
            EXPECT_EQ(iso.multiply(a, e), a);
        }
        // (a * z) o (y * b) = a * b.
        const Element a = semifield::testing::random_nonzero(kF81, rng);
        const Element b = semifield::testing::random_nonzero(kF81, rng);
        EXPECT_EQ(iso.multiply(multiply(s, a, z), multiply(s, y, b)), multiply(s, a, b));
        const StandardSet ps = principal_isotope(s, y, z);
        EXPECT_NO_THROW(validate_standard_set({ps.matrix(0), ps.matrix(1), ps.matrix(2), ps.matrix(3)}));
    }
}

TEST(PrincipalIsotope, UnitPairGivesSamePlane) {
    const StandardSet s = plane("X");
    EXPECT_EQ(principal_isotope(s, s.identity(), s.identity()), s);
    EXPECT_EQ(unitalize(cube_from_set(s)), s);
}

TEST(Unitalize, ProducesStandardSetFromPresemifield) {
    std::mt19937_64 rng(30);
    for (const char* label : {"I", "II", "VIII"}) {
        const ThreeCube c = cube_from_set(plane(label));
        for (const auto sigma : PermS3::all()) {
            const StandardSet u = unitalize(sigma_transform(c, sigma));
            std::vector<Matrix> mats;
            for (std::size_t i = 0; i < 4; ++i) mats.push_back(u.matrix(i));
            EXPECT_NO_THROW(validate_standard_set(mats)) << label << " " << sigma.name();
            const Element w = semifield::testing::random_nonzero(kF81, rng);
            EXPECT_NO_THROW(unitalize(sigma_transform(c, sigma), w));
        }
    }
}

TEST(CompleteBasis, StartsWithFirstAndIsInvertible) {
    for (std::uint64_t code = 1; code < 81; ++code) {
        const auto b = complete_basis(Vector::from_code(kF81, code));
        ASSERT_EQ(b.size(), 4u);
        EXPECT_EQ(b[0].code(), code);
        EXPECT_EQ(rank_of_columns(kF81, b), 4u);
    }
}
