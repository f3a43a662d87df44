#pragma once

// Dense complex 4x4 linear algebra: just enough for the amplitude generator
// and the Laplace-domain resolvent.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

#include "fluxion/error.hpp"

namespace fluxion {

using cplx = std::complex<double>;

inline constexpr std::size_t kDim = 4;

class ComplexVector4 {
public:
    constexpr ComplexVector4() = default;
    constexpr ComplexVector4(cplx x0, cplx x1, cplx x2, cplx x3) : data_{x0, x1, x2, x3} {}

    constexpr cplx& operator[](std::size_t i) { return data_[i]; }
    constexpr const cplx& operator[](std::size_t i) const { return data_[i]; }

    constexpr auto begin() const { return data_.begin(); }
    constexpr auto end() const { return data_.end(); }

    static ComplexVector4 unit(std::size_t i)
    {
        ComplexVector4 v;
        v[i] = 1.0;
        return v;
    }

    /// Sum of modulus squares.
    double squared_norm() const
    {
        double s = 0.0;
        for (const auto& x : data_)
            s += std::norm(x);
        return s;
    }

    double norm() const { return std::sqrt(squared_norm()); }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& x : data_)
            m = std::max(m, std::abs(x));
        return m;
    }

    bool is_finite() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
    }

    ComplexVector4& operator+=(const ComplexVector4& o)
    {
        for (std::size_t i = 0; i < kDim; ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    ComplexVector4& operator-=(const ComplexVector4& o)
    {
        for (std::size_t i = 0; i < kDim; ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    ComplexVector4& operator*=(cplx s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend ComplexVector4 operator+(ComplexVector4 a, const ComplexVector4& b) { return a += b; }
    friend ComplexVector4 operator-(ComplexVector4 a, const ComplexVector4& b) { return a -= b; }
    friend ComplexVector4 operator*(cplx s, ComplexVector4 v) { return v *= s; }
    friend ComplexVector4 operator*(ComplexVector4 v, cplx s) { return v *= s; }
    friend bool operator==(const ComplexVector4&, const ComplexVector4&) = default;

private:
    std::array<cplx, kDim> data_{};
};

/// Row-major 4x4 complex matrix, indexed from zero.
class ComplexMatrix4 {
public:
    constexpr ComplexMatrix4() = default;

    /// Row-major initializer; missing trailing entries are zero.
    ComplexMatrix4(std::initializer_list<cplx> entries)
    {
        std::copy_n(entries.begin(), std::min(entries.size(), data_.size()), data_.begin());
    }

    static ComplexMatrix4 identity()
    {
        ComplexMatrix4 m;
        for (std::size_t i = 0; i < kDim; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix4 diagonal(cplx d0, cplx d1, cplx d2, cplx d3)
    {
        ComplexMatrix4 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        m(3, 3) = d3;
        return m;
    }

    constexpr cplx& operator()(std::size_t r, std::size_t c) { return data_[r * kDim + c]; }
    constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * kDim + c]; }

    constexpr auto begin() const { return data_.begin(); }
    constexpr auto end() const { return data_.end(); }

    ComplexMatrix4 transpose() const
    {
        ComplexMatrix4 t;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    ComplexMatrix4 adjoint() const
    {
        ComplexMatrix4 t;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c)
                t(c, r) = std::conj((*this)(r, c));
        return t;
    }

    /// Maximum absolute column sum.
    double norm1() const
    {
        double best = 0.0;
        for (std::size_t c = 0; c < kDim; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < kDim; ++r)
                s += std::abs((*this)(r, c));
            best = std::max(best, s);
        }
        return best;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& x : data_)
            m = std::max(m, std::abs(x));
        return m;
    }

    bool is_finite() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
    }

    ComplexMatrix4& operator+=(const ComplexMatrix4& o)
    {
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix4& operator-=(const ComplexMatrix4& o)
    {
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix4& operator*=(cplx s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend ComplexMatrix4 operator+(ComplexMatrix4 a, const ComplexMatrix4& b) { return a += b; }
    friend ComplexMatrix4 operator-(ComplexMatrix4 a, const ComplexMatrix4& b) { return a -= b; }
    friend ComplexMatrix4 operator*(cplx s, ComplexMatrix4 m) { return m *= s; }
    friend ComplexMatrix4 operator*(ComplexMatrix4 m, cplx s) { return m *= s; }

    friend ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b)
    {
        ComplexMatrix4 p;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < kDim; ++k)
                    s += a(r, k) * b(k, c);
                p(r, c) = s;
            }
        return p;
    }

    friend ComplexVector4 operator*(const ComplexMatrix4& a, const ComplexVector4& v)
    {
        ComplexVector4 out;
        for (std::size_t r = 0; r < kDim; ++r) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < kDim; ++k)
                s += a(r, k) * v[k];
            out[r] = s;
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix4&, const ComplexMatrix4&) = default;

private:
    std::array<cplx, kDim * kDim> data_{};
};

/// LU factorization with partial pivoting, P*A = L*U packed in one matrix.
class LuDecomposition {
public:
    /// Pivots smaller than this fraction of the largest entry of the input
    /// are treated as zero.
    static constexpr double kPivotTolerance = 1e-14;

    explicit LuDecomposition(const ComplexMatrix4& m) : lu_(m)
    {
        if (!m.is_finite())
            throw Error(ErrorCode::NonFiniteInput, "matrix");
        const double threshold = kPivotTolerance * m.max_abs();
        for (std::size_t k = 0; k < kDim; ++k) {
            std::size_t pivot = k;
            for (std::size_t r = k + 1; r < kDim; ++r)
                if (std::abs(lu_(r, k)) > std::abs(lu_(pivot, k)))
                    pivot = r;
            if (std::abs(lu_(pivot, k)) <= threshold)
                throw Error(ErrorCode::SingularMatrix, "matrix", "pivot below tolerance in column " + std::to_string(k));
            if (pivot != k) {
                for (std::size_t c = 0; c < kDim; ++c)
                    std::swap(lu_(k, c), lu_(pivot, c));
                std::swap(perm_[k], perm_[pivot]);
            }
            for (std::size_t r = k + 1; r < kDim; ++r) {
                const cplx f = lu_(r, k) / lu_(k, k);
                lu_(r, k) = f;
                for (std::size_t c = k + 1; c < kDim; ++c)
                    lu_(r, c) -= f * lu_(k, c);
            }
        }
    }

    ComplexVector4 solve(const ComplexVector4& rhs) const
    {
        ComplexVector4 x;
        for (std::size_t r = 0; r < kDim; ++r) {
            cplx s = rhs[perm_[r]];
            for (std::size_t c = 0; c < r; ++c)
                s -= lu_(r, c) * x[c];
            x[r] = s;
        }
        for (std::size_t r = kDim; r-- > 0;) {
            cplx s = x[r];
            for (std::size_t c = r + 1; c < kDim; ++c)
                s -= lu_(r, c) * x[c];
            x[r] = s / lu_(r, r);
        }
        return x;
    }

    ComplexMatrix4 solve(const ComplexMatrix4& rhs) const
    {
        ComplexMatrix4 x;
        for (std::size_t c = 0; c < kDim; ++c) {
            ComplexVector4 col;
            for (std::size_t r = 0; r < kDim; ++r)
                col[r] = rhs(r, c);
            const auto sol = solve(col);
            for (std::size_t r = 0; r < kDim; ++r)
                x(r, c) = sol[r];
        }
        return x;
    }

    ComplexMatrix4 inverse() const { return solve(ComplexMatrix4::identity()); }

private:
    ComplexMatrix4 lu_;
    std::array<std::size_t, kDim> perm_{0, 1, 2, 3};
};

/// Solves m * x = rhs. Throws SingularMatrix or NonFiniteInput.
inline ComplexVector4 solve(const ComplexMatrix4& m, const ComplexVector4& rhs)
{
    if (!rhs.is_finite())
        throw Error(ErrorCode::NonFiniteInput, "rhs");
    return LuDecomposition(m).solve(rhs);
}

/// 1-norm condition number ||m||_1 * ||m^-1||_1.
inline double condition_number(const ComplexMatrix4& m)
{
    return m.norm1() * LuDecomposition(m).inverse().norm1();
}

namespace detail {

// Pade coefficients and 1-norm thresholds for degrees 3, 5, 7, 9 and 13
// (Higham's scaling-and-squaring algorithm).
inline constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                               2162160.0,     110880.0,     3960.0,       90.0,        1.0};
inline constexpr std::array<double, 14> kPade13{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                                1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                                670442572800.0,      33522128640.0,       1323241920.0,
                                                40840800.0,          960960.0,            16380.0,
                                                182.0,               1.0};
inline constexpr std::array<double, 4> kTheta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                              2.097847961257068e0};
inline constexpr double kTheta13 = 5.371920351148152e0;

// Odd/even split for degrees <= 9: U = A * sum b[2k+1] A^2k, V = sum b[2k] A^2k.
template <std::size_t N>
void pade_low(const ComplexMatrix4& a, const std::array<double, N>& b, ComplexMatrix4& u, ComplexMatrix4& v)
{
    const auto a2 = a * a;
    ComplexMatrix4 power = ComplexMatrix4::identity();
    ComplexMatrix4 odd, even;
    for (std::size_t k = 0; 2 * k < N; ++k) {
        even += b[2 * k] * power;
        odd += b[2 * k + 1] * power;
        power = power * a2;
    }
    u = a * odd;
    v = even;
}

inline void pade13(const ComplexMatrix4& a, ComplexMatrix4& u, ComplexMatrix4& v)
{
    const auto& b = kPade13;
    const auto id = ComplexMatrix4::identity();
    const auto a2 = a * a;
    const auto a4 = a2 * a2;
    const auto a6 = a4 * a2;
    const auto inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
    u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const auto inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

} // namespace detail

/// e^{scale * m} by scaling and squaring with a Pade approximant.
inline ComplexMatrix4 expm(const ComplexMatrix4& m, double scale = 1.0)
{
    if (!m.is_finite() || !std::isfinite(scale))
        throw Error(ErrorCode::NonFiniteInput, "expm");
    ComplexMatrix4 a = scale * m;
    const double norm = a.norm1();

    ComplexMatrix4 u, v;
    int squarings = 0;
    if (norm <= detail::kTheta[0]) {
        detail::pade_low(a, detail::kPade3, u, v);
    } else if (norm <= detail::kTheta[1]) {
        detail::pade_low(a, detail::kPade5, u, v);
    } else if (norm <= detail::kTheta[2]) {
        detail::pade_low(a, detail::kPade7, u, v);
    } else if (norm <= detail::kTheta[3]) {
        detail::pade_low(a, detail::kPade9, u, v);
    } else {
        if (norm > detail::kTheta13)
            squarings = static_cast<int>(std::ceil(std::log2(norm / detail::kTheta13)));
        a *= std::ldexp(1.0, -squarings);
        detail::pade13(a, u, v);
    }

    ComplexMatrix4 result = LuDecomposition(v - u).solve(v + u);
    for (int i = 0; i < squarings; ++i)
        result = result * result;
    return result;
}

} // namespace fluxion
