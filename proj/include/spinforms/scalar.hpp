#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinforms {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }

/// Splits n > 0 as s^2 * d with d squarefree. Radicands in this library stay
/// tiny, so trial division is plenty.
inline std::pair<BigInt, BigInt> squarefree_split(BigInt n) {
    BigInt s = 1;
    for (BigInt p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            s *= p;
        }
        if (p > 1000000) break;  // out of expected range, keep remainder as-is
    }
    return {s, n};
}

inline BigInt smallest_prime_factor(const BigInt& n) {
    for (BigInt p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

/**
 * A number in Q(i, sqrt(D1), ..., sqrt(Dk)) -- a finite sum of Gaussian
 * rationals times square roots of squarefree positive integers -- or, once an
 * operation leaves that field (pi-dependent normalizations, numeric
 * evaluation), a complex double carrying a "floating" flag.
 *
 * Exact values are kept in canonical form: terms sorted by radicand, no zero
 * terms, radicand 1 for the rational part. Equality on exact values is exact.
 */
class Scalar {
public:
    struct Term {
        BigInt radicand;  // squarefree, >= 1
        BigRat re, im;
    };

    Scalar() = default;
    Scalar(int n) { set_rational(BigRat(n)); }
    Scalar(long long n) { set_rational(BigRat(n)); }
    explicit Scalar(const BigRat& r) { set_rational(r); }
    Scalar(const BigRat& re, const BigRat& im) {
        if (re != 0 || im != 0) terms_.push_back(Term{1, re, im});
    }

    static Scalar rational(long long num, long long den) { return Scalar(BigRat(num, den)); }
    static Scalar imaginary_unit() { return Scalar(BigRat(0), BigRat(1)); }
    static Scalar from_double(double x) { return from_complex({x, 0.0}); }
    static Scalar from_complex(std::complex<double> z) {
        Scalar s;
        s.exact_ = false;
        s.approx_ = z;
        return s;
    }
    /// coeff * sqrt(radicand), radicand canonicalized.
    static Scalar root_term(const BigRat& re, const BigRat& im, const BigInt& radicand) {
        if (radicand <= 0) throw ScalarError("root_term: radicand must be positive");
        auto [s, d] = squarefree_split(radicand);
        Scalar out;
        BigRat sre = re * s, sim = im * s;
        if (sre != 0 || sim != 0) out.terms_.push_back(Term{d, sre, sim});
        out.normalize();
        return out;
    }

    bool exact() const { return exact_; }
    bool is_zero() const { return exact_ ? terms_.empty() : approx_ == std::complex<double>(0.0, 0.0); }
    bool is_rational() const {
        return exact_ && (terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1 && terms_[0].im == 0));
    }
    bool is_real() const {
        if (!exact_) return approx_.imag() == 0.0;
        for (const auto& t : terms_)
            if (t.im != 0) return false;
        return true;
    }
    /// Rational value; throws if not a plain rational.
    BigRat rational_value() const {
        if (!is_rational()) throw ScalarError("scalar is not rational");
        return terms_.empty() ? BigRat(0) : terms_[0].re;
    }
    const std::vector<Term>& terms() const { return terms_; }

    std::complex<double> to_complex() const {
        if (!exact_) return approx_;
        std::complex<double> z{0.0, 0.0};
        for (const auto& t : terms_) {
            double root = std::sqrt(t.radicand.convert_to<double>());
            z += std::complex<double>(to_double(t.re) * root, to_double(t.im) * root);
        }
        return z;
    }
    double real_approx() const { return to_complex().real(); }

    Scalar operator-() const {
        Scalar out = *this;
        if (!out.exact_) {
            out.approx_ = -out.approx_;
            return out;
        }
        for (auto& t : out.terms_) {
            t.re = -t.re;
            t.im = -t.im;
        }
        return out;
    }

    Scalar conj() const {
        Scalar out = *this;
        if (!out.exact_) {
            out.approx_ = std::conj(out.approx_);
            return out;
        }
        for (auto& t : out.terms_) t.im = -t.im;
        return out;
    }

    Scalar real_part() const {
        if (!exact_) return from_double(approx_.real());
        Scalar out;
        for (const auto& t : terms_)
            if (t.re != 0) out.terms_.push_back(Term{t.radicand, t.re, 0});
        return out;
    }
    Scalar imag_part() const {
        if (!exact_) return from_double(approx_.imag());
        Scalar out;
        for (const auto& t : terms_)
            if (t.im != 0) out.terms_.push_back(Term{t.radicand, t.im, 0});
        return out;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (!a.exact_ || !b.exact_) return from_complex(a.to_complex() + b.to_complex());
        Scalar out;
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].radicand < b.terms_[j].radicand)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].radicand < a.terms_[i].radicand) {
                out.terms_.push_back(b.terms_[j++]);
            } else {
                Term t{a.terms_[i].radicand, a.terms_[i].re + b.terms_[j].re, a.terms_[i].im + b.terms_[j].im};
                if (t.re != 0 || t.im != 0) out.terms_.push_back(std::move(t));
                ++i;
                ++j;
            }
        }
        return out;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (!a.exact_ || !b.exact_) return from_complex(a.to_complex() * b.to_complex());
        Scalar out;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                auto [s, d] = squarefree_split(ta.radicand * tb.radicand);
                BigRat re = (ta.re * tb.re - ta.im * tb.im) * s;
                BigRat im = (ta.re * tb.im + ta.im * tb.re) * s;
                out.accumulate(d, re, im);
            }
        }
        out.normalize();
        return out;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw ScalarError("division by zero scalar");
        if (!a.exact_ || !b.exact_) return from_complex(a.to_complex() / b.to_complex());
        return a * b.inverse_exact();
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            if (a.terms_.size() != b.terms_.size()) return false;
            for (std::size_t i = 0; i < a.terms_.size(); ++i) {
                if (a.terms_[i].radicand != b.terms_[i].radicand || a.terms_[i].re != b.terms_[i].re ||
                    a.terms_[i].im != b.terms_[i].im)
                    return false;
            }
            return true;
        }
        return a.to_complex() == b.to_complex();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Principal square root. Exact for rationals (positive: sqrt as a radical
    /// term; negative: i*sqrt(|.|)); anything else degrades to floating.
    Scalar sqrt() const {
        if (is_zero()) return Scalar();
        if (is_rational()) {
            BigRat r = rational_value();
            bool negative = r < 0;
            if (negative) r = -r;
            BigInt num = numerator(r), den = denominator(r);
            auto [s, d] = squarefree_split(num * den);
            // sqrt(num/den) = sqrt(num*den)/den = (s/den) sqrt(d)
            BigRat coeff(s, den);
            return negative ? root_term(BigRat(0), coeff, d) : root_term(coeff, BigRat(0), d);
        }
        return from_complex(std::sqrt(to_complex()));
    }

    Scalar pow(int e) const {
        if (e < 0) return Scalar(1) / pow(-e);
        Scalar out(1), base = *this;
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    /// Canonical text form; floating values render with 17 significant digits.
    std::string to_string() const;

private:
    bool exact_ = true;
    std::vector<Term> terms_;
    std::complex<double> approx_{0.0, 0.0};

    void set_rational(const BigRat& r) {
        if (r != 0) terms_.push_back(Term{1, r, BigRat(0)});
    }
    void accumulate(const BigInt& radicand, const BigRat& re, const BigRat& im) {
        for (auto& t : terms_) {
            if (t.radicand == radicand) {
                t.re += re;
                t.im += im;
                return;
            }
        }
        terms_.push_back(Term{radicand, re, im});
    }
    void normalize() {
        std::vector<Term> kept;
        kept.reserve(terms_.size());
        for (auto& t : terms_)
            if (t.re != 0 || t.im != 0) kept.push_back(std::move(t));
        std::sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
        terms_ = std::move(kept);
    }

    /// Exact inverse by iterated rationalization: strip one radical prime at a
    /// time via (A + sqrt(p)B)^-1 = (A - sqrt(p)B)/(A^2 - p B^2).
    Scalar inverse_exact() const {
        if (terms_.empty()) throw ScalarError("division by zero scalar");
        if (terms_.size() == 1) {
            const Term& t = terms_[0];
            BigRat norm = (t.re * t.re + t.im * t.im) * t.radicand;
            // 1/((x+iy) sqrt(D)) = (x-iy) sqrt(D) / ((x^2+y^2) D)
            return root_term(t.re / norm, -t.im / norm, t.radicand);
        }
        BigInt p = 0;
        for (const auto& t : terms_) {
            if (t.radicand > 1) {
                p = smallest_prime_factor(t.radicand);
                break;
            }
        }
        if (p == 0) throw ScalarError("inverse: malformed scalar");
        Scalar a, b;  // *this = a + sqrt(p) * b
        for (const auto& t : terms_) {
            if (t.radicand % p == 0)
                b.terms_.push_back(Term{t.radicand / p, t.re, t.im});
            else
                a.terms_.push_back(t);
        }
        a.normalize();
        b.normalize();
        Scalar denom = a * a - Scalar(BigRat(p)) * b * b;
        Scalar numer = a - root_term(BigRat(1), BigRat(0), p) * b;
        return numer * denom.inverse_exact();
    }
};

inline Scalar sqrt(const Scalar& s) { return s.sqrt(); }

inline std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace detail {
inline std::string rat_string(const BigRat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}
inline std::string gaussian_string(const BigRat& re, const BigRat& im) {
    if (im == 0) return rat_string(re);
    std::string imp = (im == 1) ? "i" : (im == -1 ? "-i" : rat_string(im) + "*i");
    if (re == 0) return imp;
    if (im > 0) return "(" + rat_string(re) + "+" + imp + ")";
    return "(" + rat_string(re) + imp + ")";
}
}  // namespace detail

inline std::string Scalar::to_string() const {
    if (!exact_) {
        if (approx_.imag() == 0.0) return format17(approx_.real());
        return "(" + format17(approx_.real()) + (approx_.imag() < 0 ? "" : "+") + format17(approx_.imag()) + "i)";
    }
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        std::string piece = detail::gaussian_string(t.re, t.im);
        if (t.radicand != 1) {
            if (piece == "1")
                piece = "sqrt(" + t.radicand.str() + ")";
            else if (piece == "-1")
                piece = "-sqrt(" + t.radicand.str() + ")";
            else
                piece += "*sqrt(" + t.radicand.str() + ")";
        }
        if (i > 0 && piece[0] != '-') out += "+";
        out += piece;
    }
    if (terms_.size() > 1) return "(" + out + ")";
    return out;
}

}  // namespace spinforms
