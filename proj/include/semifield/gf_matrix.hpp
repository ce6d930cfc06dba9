#pragma once

// Dense linear algebra over the prime field GF(p) for the small dimensions
// used by semifield enumeration (d <= 6), plus characteristic and primitive
// polynomials and the decimal matrix-code format.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "semifield/errors.hpp"

namespace semifield {

inline constexpr std::size_t kMaxDim = 6;
inline constexpr std::uint32_t kMaxPrime = 13;

namespace detail {

constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

/// base^exp, or nullopt on 64-bit overflow.
constexpr std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
        r *= base;
    }
    return r;
}

}  // namespace detail

/// Prime p and dimension d of the ambient space GF(p)^d.
class FieldSpec {
public:
    constexpr FieldSpec() = default;

    FieldSpec(std::uint32_t p, std::uint32_t d) : p_(p), d_(d) {
        if (!detail::is_prime(p) || p > kMaxPrime)
            throw InvalidFieldSpec("p must be a prime no larger than 13, got " + std::to_string(p));
        if (d < 2 || d > kMaxDim)
            throw InvalidFieldSpec("d must lie in [2, 6], got " + std::to_string(d));
        if (!detail::checked_pow(p, std::uint64_t{d} * (d - 1)))
            throw InvalidFieldSpec("matrix codes for p=" + std::to_string(p) + ", d=" + std::to_string(d) +
                                   " do not fit in 64 bits");
    }

    constexpr std::uint32_t p() const noexcept { return p_; }
    constexpr std::uint32_t d() const noexcept { return d_; }

    /// Number of elements p^d.
    std::uint64_t order() const noexcept { return *detail::checked_pow(p_, d_); }
    /// Size of the matrix-code range p^(d(d-1)).
    std::uint64_t code_space() const noexcept { return *detail::checked_pow(p_, std::uint64_t{d_} * (d_ - 1)); }

    std::uint8_t add(std::uint32_t a, std::uint32_t b) const noexcept { return static_cast<std::uint8_t>((a + b) % p_); }
    std::uint8_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return static_cast<std::uint8_t>((a + p_ - b) % p_); }
    std::uint8_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return static_cast<std::uint8_t>((a * b) % p_); }
    std::uint8_t neg(std::uint32_t a) const noexcept { return static_cast<std::uint8_t>((p_ - a) % p_); }
    std::uint8_t inv(std::uint32_t a) const {
        if (a % p_ == 0) throw SingularMatrix();
        std::uint32_t r = 1;
        for (std::uint32_t i = 0; i + 2 < p_; ++i) r = (r * a) % p_;
        return static_cast<std::uint8_t>(r);
    }

    friend constexpr bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::uint32_t p_ = 3;
    std::uint32_t d_ = 4;
};

/// Column vector in GF(p)^d.
class Vector {
public:
    Vector() = default;
    explicit Vector(FieldSpec spec) : spec_(spec) {}
    Vector(FieldSpec spec, std::initializer_list<std::uint32_t> coords) : spec_(spec) {
        std::size_t i = 0;
        for (auto c : coords) c_[i++] = static_cast<std::uint8_t>(c % spec.p());
    }

    static Vector unit(FieldSpec spec, std::size_t i) {
        Vector v(spec);
        v.c_[i] = 1;
        return v;
    }

    /// Inverse of code(): coordinate 0 is the most significant base-p digit.
    static Vector from_code(FieldSpec spec, std::uint64_t code) {
        Vector v(spec);
        for (std::size_t r = spec.d(); r-- > 0;) {
            v.c_[r] = static_cast<std::uint8_t>(code % spec.p());
            code /= spec.p();
        }
        return v;
    }

    std::uint64_t code() const noexcept {
        std::uint64_t x = 0;
        for (std::size_t r = 0; r < size(); ++r) x = x * spec_.p() + c_[r];
        return x;
    }

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return spec_.d(); }
    std::uint8_t operator[](std::size_t i) const noexcept { return c_[i]; }
    std::uint8_t& operator[](std::size_t i) noexcept { return c_[i]; }

    bool is_zero() const noexcept {
        return std::all_of(c_.begin(), c_.begin() + size(), [](auto x) { return x == 0; });
    }

    Vector& operator+=(const Vector& o) noexcept {
        for (std::size_t i = 0; i < size(); ++i) c_[i] = spec_.add(c_[i], o.c_[i]);
        return *this;
    }
    Vector& operator-=(const Vector& o) noexcept {
        for (std::size_t i = 0; i < size(); ++i) c_[i] = spec_.sub(c_[i], o.c_[i]);
        return *this;
    }
    friend Vector operator+(Vector a, const Vector& b) noexcept { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) noexcept { return a -= b; }
    friend Vector operator*(std::uint32_t s, Vector v) noexcept {
        for (std::size_t i = 0; i < v.size(); ++i) v.c_[i] = v.spec_.mul(s, v.c_[i]);
        return v;
    }

    friend bool operator==(const Vector& a, const Vector& b) noexcept {
        return a.spec_ == b.spec_ && std::equal(a.c_.begin(), a.c_.begin() + a.size(), b.c_.begin());
    }

private:
    FieldSpec spec_;
    std::array<std::uint8_t, kMaxDim> c_{};
};

/// Square d x d matrix over GF(p), row-major, 0-indexed accessors.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(FieldSpec spec) : spec_(spec) {}
    /// Rows given top to bottom.
    Matrix(FieldSpec spec, std::initializer_list<std::initializer_list<std::uint32_t>> rows) : spec_(spec) {
        std::size_t r = 0;
        for (const auto& row : rows) {
            std::size_t c = 0;
            for (auto x : row) at(r, c++) = static_cast<std::uint8_t>(x % spec.p());
            ++r;
        }
    }

    static Matrix identity(FieldSpec spec) {
        Matrix m(spec);
        for (std::size_t i = 0; i < spec.d(); ++i) m.at(i, i) = 1;
        return m;
    }

    static Matrix from_columns(FieldSpec spec, std::span<const Vector> cols) {
        Matrix m(spec);
        for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
        return m;
    }

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t dim() const noexcept { return spec_.d(); }

    std::uint8_t at(std::size_t r, std::size_t c) const noexcept { return e_[r * kMaxDim + c]; }
    std::uint8_t& at(std::size_t r, std::size_t c) noexcept { return e_[r * kMaxDim + c]; }

    Vector column(std::size_t c) const {
        Vector v(spec_);
        for (std::size_t r = 0; r < dim(); ++r) v[r] = at(r, c);
        return v;
    }
    void set_column(std::size_t c, const Vector& v) noexcept {
        for (std::size_t r = 0; r < dim(); ++r) at(r, c) = v[r];
    }

    Matrix transpose() const {
        Matrix t(spec_);
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Matrix& operator+=(const Matrix& o) noexcept {
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c) at(r, c) = spec_.add(at(r, c), o.at(r, c));
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) noexcept { return a += b; }

    friend Matrix operator*(std::uint32_t s, Matrix m) noexcept {
        for (std::size_t r = 0; r < m.dim(); ++r)
            for (std::size_t c = 0; c < m.dim(); ++c) m.at(r, c) = m.spec_.mul(s, m.at(r, c));
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) noexcept {
        Matrix out(a.spec_);
        const std::size_t n = a.dim();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                std::uint32_t s = 0;
                for (std::size_t k = 0; k < n; ++k) s += std::uint32_t{a.at(r, k)} * b.at(k, c);
                out.at(r, c) = static_cast<std::uint8_t>(s % a.spec_.p());
            }
        return out;
    }

    friend Vector operator*(const Matrix& a, const Vector& v) noexcept {
        Vector out(a.spec_);
        for (std::size_t r = 0; r < a.dim(); ++r) {
            std::uint32_t s = 0;
            for (std::size_t k = 0; k < a.dim(); ++k) s += std::uint32_t{a.at(r, k)} * v[k];
            out[r] = static_cast<std::uint8_t>(s % a.spec_.p());
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
        if (!(a.spec_ == b.spec_)) return false;
        for (std::size_t r = 0; r < a.dim(); ++r)
            for (std::size_t c = 0; c < a.dim(); ++c)
                if (a.at(r, c) != b.at(r, c)) return false;
        return true;
    }

private:
    FieldSpec spec_;
    std::array<std::uint8_t, kMaxDim * kMaxDim> e_{};
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
        os << (r == 0 ? "[" : " ");
        for (std::size_t c = 0; c < m.dim(); ++c) os << (c ? " " : "") << int{m.at(r, c)};
        os << (r + 1 == m.dim() ? "]" : "\n");
    }
    return os;
}

/// Rank of the d x k matrix formed by the given columns.
inline std::size_t rank_of_columns(FieldSpec spec, std::span<const Vector> cols) {
    const std::size_t rows = spec.d();
    std::array<std::array<std::uint8_t, kMaxDim>, kMaxDim> a{};
    const std::size_t ncols = std::min(cols.size(), kMaxDim);
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::size_t r = 0; r < rows; ++r) a[r][c] = cols[c][r];

    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        const std::uint8_t inv = spec.inv(a[rank][c]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const std::uint8_t f = spec.mul(a[r][c], inv);
            for (std::size_t k = c; k < ncols; ++k) a[r][k] = spec.sub(a[r][k], spec.mul(f, a[rank][k]));
        }
        ++rank;
    }
    return rank;
}

/// Rank of the first `leading_columns` columns of m.
inline std::size_t rank(const Matrix& m, std::size_t leading_columns) {
    std::array<Vector, kMaxDim> cols;
    for (std::size_t c = 0; c < leading_columns; ++c) cols[c] = m.column(c);
    return rank_of_columns(m.spec(), std::span<const Vector>(cols.data(), leading_columns));
}

inline std::size_t rank(const Matrix& m) { return rank(m, m.dim()); }

inline bool is_invertible(const Matrix& m) { return rank(m) == m.dim(); }

inline Matrix inverse(const Matrix& m) {
    const FieldSpec& f = m.spec();
    const std::size_t n = m.dim();
    Matrix a = m;
    Matrix inv = Matrix::identity(f);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) throw SingularMatrix();
        if (piv != c)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a.at(piv, k), a.at(c, k));
                std::swap(inv.at(piv, k), inv.at(c, k));
            }
        const std::uint8_t s = f.inv(a.at(c, c));
        for (std::size_t k = 0; k < n; ++k) {
            a.at(c, k) = f.mul(s, a.at(c, k));
            inv.at(c, k) = f.mul(s, inv.at(c, k));
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a.at(r, c) == 0) continue;
            const std::uint8_t g = a.at(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                a.at(r, k) = f.sub(a.at(r, k), f.mul(g, a.at(c, k)));
                inv.at(r, k) = f.sub(inv.at(r, k), f.mul(g, inv.at(c, k)));
            }
        }
    }
    return inv;
}

/// Monic polynomial of degree d; coeff(k) is the coefficient of x^k.
class Poly {
public:
    Poly() = default;
    /// Coefficients of x^0 .. x^(d-1); the leading coefficient is implied.
    Poly(FieldSpec spec, std::initializer_list<std::uint32_t> low_coeffs) : spec_(spec) {
        std::size_t k = 0;
        for (auto c : low_coeffs) c_[k++] = static_cast<std::uint8_t>(c % spec.p());
        c_[spec.d()] = 1;
    }
    explicit Poly(FieldSpec spec) : spec_(spec) { c_[spec.d()] = 1; }

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t degree() const noexcept { return spec_.d(); }
    std::uint8_t coeff(std::size_t k) const noexcept { return c_[k]; }
    void set_coeff(std::size_t k, std::uint32_t v) noexcept {
        if (k < degree()) c_[k] = static_cast<std::uint8_t>(v % spec_.p());
    }

    /// Base-p integer with coeff(d-1) most significant; orders polynomials lexicographically.
    std::uint64_t code() const noexcept {
        std::uint64_t x = 0;
        for (std::size_t k = degree(); k-- > 0;) x = x * spec_.p() + c_[k];
        return x;
    }
    static Poly from_code(FieldSpec spec, std::uint64_t code) {
        Poly f(spec);
        for (std::size_t k = 0; k < spec.d(); ++k) {
            f.c_[k] = static_cast<std::uint8_t>(code % spec.p());
            code /= spec.p();
        }
        return f;
    }

    std::uint8_t evaluate(std::uint32_t x) const noexcept {
        std::uint32_t r = 0;
        for (std::size_t k = degree() + 1; k-- > 0;) r = (r * x + c_[k]) % spec_.p();
        return static_cast<std::uint8_t>(r);
    }

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.spec_ == b.spec_ && a.code() == b.code();
    }

private:
    FieldSpec spec_;
    std::array<std::uint8_t, kMaxDim + 1> c_{};
};

/// Renders e.g. "x^4 + 2x^3 + 2".
inline std::string to_string(const Poly& f) {
    std::string s;
    for (std::size_t k = f.degree() + 1; k-- > 0;) {
        const unsigned c = f.coeff(k);
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (c != 1 || k == 0) s += std::to_string(c);
        if (k >= 1) s += "x";
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << to_string(f); }

/// det(xI - M) by Berkowitz's division-free recurrence.
inline Poly char_poly(const Matrix& m) {
    const FieldSpec& f = m.spec();
    const std::size_t n = m.dim();
    // Highest-degree-first coefficient vector of the characteristic polynomial
    // of the leading k x k block.
    std::array<std::uint8_t, kMaxDim + 1> cur{};
    cur[0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        // t = [1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C]
        std::array<std::uint8_t, kMaxDim + 2> t{};
        t[0] = 1;
        t[1] = f.neg(m.at(k, k));
        std::array<std::uint8_t, kMaxDim> v{};  // A^j C, restricted to the leading block
        for (std::size_t i = 0; i < k; ++i) v[i] = m.at(i, k);
        for (std::size_t j = 0; j < k; ++j) {
            std::uint32_t s = 0;
            for (std::size_t i = 0; i < k; ++i) s += std::uint32_t{m.at(k, i)} * v[i];
            t[j + 2] = f.neg(s % f.p());
            std::array<std::uint8_t, kMaxDim> w{};
            for (std::size_t r = 0; r < k; ++r) {
                std::uint32_t acc = 0;
                for (std::size_t i = 0; i < k; ++i) acc += std::uint32_t{m.at(r, i)} * v[i];
                w[r] = static_cast<std::uint8_t>(acc % f.p());
            }
            v = w;
        }
        std::array<std::uint8_t, kMaxDim + 1> next{};
        for (std::size_t i = 0; i <= k + 1; ++i) {
            std::uint32_t s = 0;
            for (std::size_t j = 0; j <= std::min(i, k); ++j) s += std::uint32_t{t[i - j]} * cur[j];
            next[i] = static_cast<std::uint8_t>(s % f.p());
        }
        cur = next;
    }
    Poly out(f);
    for (std::size_t k = 0; k < n; ++k) out.set_coeff(k, cur[n - k]);
    return out;
}

/// Columns e_2, ..., e_d followed by the negated low coefficients of f.
inline Matrix companion_matrix(const Poly& poly) {
    const FieldSpec& f = poly.spec();
    Matrix m(f);
    for (std::size_t j = 0; j + 1 < f.d(); ++j) m.at(j + 1, j) = 1;
    for (std::size_t r = 0; r < f.d(); ++r) m.at(r, f.d() - 1) = f.neg(poly.coeff(r));
    return m;
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Residues modulo a monic polynomial, stored as d low coefficients.
class PolyRing {
public:
    using Elem = std::array<std::uint8_t, kMaxDim>;

    explicit PolyRing(const Poly& modulus) : mod_(modulus), f_(modulus.spec()) {}

    Elem one() const { return Elem{1}; }
    Elem x() const {
        Elem e{};
        if (f_.d() > 1) e[1] = 1;
        return e;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        const std::size_t d = f_.d();
        std::array<std::uint32_t, 2 * kMaxDim> prod{};
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) prod[i + j] += std::uint32_t{a[i]} * b[j];
        for (auto& c : prod) c %= f_.p();
        for (std::size_t k = 2 * d - 1; k-- > d;) {
            const std::uint32_t top = prod[k];
            if (top == 0) continue;
            prod[k] = 0;
            // x^k = x^(k-d) * x^d and x^d = -(low coefficients)
            for (std::size_t i = 0; i < d; ++i)
                prod[k - d + i] = (prod[k - d + i] + top * f_.neg(mod_.coeff(i))) % f_.p();
        }
        Elem out{};
        for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<std::uint8_t>(prod[i]);
        return out;
    }

    Elem pow(Elem base, std::uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

private:
    Poly mod_;
    FieldSpec f_;
};

}  // namespace detail

/// True iff x has multiplicative order exactly p^d - 1 modulo f (which forces f irreducible).
inline bool is_primitive_poly(const Poly& f) {
    if (f.coeff(0) == 0) return false;
    const std::uint64_t n = f.spec().order() - 1;
    detail::PolyRing ring(f);
    const auto x = ring.x();
    if (ring.pow(x, n) != ring.one()) return false;
    for (auto r : detail::prime_factors(n))
        if (ring.pow(x, n / r) == ring.one()) return false;
    return true;
}

/// All monic primitive polynomials of degree d, ordered by (c_{d-1}, ..., c_0).
inline std::vector<Poly> primitive_polys(FieldSpec spec) {
    std::vector<Poly> out;
    const std::uint64_t count = spec.order();
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly f = Poly::from_code(spec, code);
        if (is_primitive_poly(f)) out.push_back(f);
    }
    return out;
}

/// Cached primitivity by polynomial code; cheap lookup for the hot loops.
class PrimitivityTable {
public:
    explicit PrimitivityTable(FieldSpec spec) : spec_(spec), table_(spec.order(), false) {
        for (const auto& f : primitive_polys(spec)) table_[f.code()] = true;
    }
    bool operator()(const Poly& f) const { return table_[f.code()]; }
    const FieldSpec& spec() const noexcept { return spec_; }

private:
    FieldSpec spec_;
    std::vector<bool> table_;
};

/// Decimal matrix code: the columns 2..d of a matrix whose first column is e_i.
struct MatrixCode {
    std::size_t first_col_index = 1;  // i, 1-based
    std::uint64_t value = 0;

    friend constexpr bool operator==(const MatrixCode&, const MatrixCode&) = default;
};

inline MatrixCode encode_matrix(const Matrix& m) {
    const std::size_t d = m.dim();
    const Vector first = m.column(0);
    std::size_t index = 0;
    for (std::size_t i = 0; i < d; ++i) {
        if (first == Vector::unit(m.spec(), i)) {
            index = i + 1;
            break;
        }
    }
    if (index == 0) throw NotStandardColumn();
    // Column 1 holds the most significant digits, row 0 first within a column.
    std::uint64_t value = 0;
    for (std::size_t c = 1; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) value = value * m.spec().p() + m.at(r, c);
    return {index, value};
}

inline Matrix decode_matrix(const MatrixCode& code, FieldSpec spec) {
    const std::size_t d = spec.d();
    if (code.first_col_index < 1 || code.first_col_index > d)
        throw ParseError("first column index out of range");
    if (code.value >= spec.code_space()) throw ParseError("matrix code " + std::to_string(code.value) + " out of range");
    Matrix m(spec);
    m.at(code.first_col_index - 1, 0) = 1;
    std::uint64_t v = code.value;
    for (std::size_t c = d; c-- > 1;)
        for (std::size_t r = d; r-- > 0;) {
            m.at(r, c) = static_cast<std::uint8_t>(v % spec.p());
            v /= spec.p();
        }
    return m;
}

}  // namespace semifield
