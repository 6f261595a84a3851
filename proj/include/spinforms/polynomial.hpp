#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spinforms/scalar.hpp"

namespace spinforms {

struct VariableSetMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PolynomialError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Ordered variable identifiers with an involutive conjugation pairing.
 * Self-paired variables are real; only variables flagged Laurent (the radial
 * coordinate r) admit negative exponents.
 */
class VariableSet {
public:
    struct Var {
        std::string name;
        int conj;      // index of the conjugate variable (self for real vars)
        bool laurent;  // negative exponents allowed
    };

    static std::shared_ptr<const VariableSet> make(std::vector<Var> vars) {
        auto vs = std::shared_ptr<VariableSet>(new VariableSet());
        vs->vars_ = std::move(vars);
        for (std::size_t i = 0; i < vs->vars_.size(); ++i) {
            int c = vs->vars_[i].conj;
            if (c < 0 || c >= static_cast<int>(vs->vars_.size()) || vs->vars_[c].conj != static_cast<int>(i))
                throw PolynomialError("conjugation pairing is not an involution");
        }
        return vs;
    }

    /// {u, v, ub, vb} with u<->ub, v<->vb.
    static const std::shared_ptr<const VariableSet>& su2() {
        static auto vs = make({{"u", 2, false}, {"v", 3, false}, {"ub", 0, false}, {"vb", 1, false}});
        return vs;
    }
    /// {x, y, z}, all real.
    static const std::shared_ptr<const VariableSet>& euclid3() {
        static auto vs = make({{"x", 0, false}, {"y", 1, false}, {"z", 2, false}});
        return vs;
    }
    /// {r, u, v, ub, vb}; r real and Laurent.
    static const std::shared_ptr<const VariableSet>& monopole4() {
        static auto vs =
            make({{"r", 0, true}, {"u", 3, false}, {"v", 4, false}, {"ub", 1, false}, {"vb", 2, false}});
        return vs;
    }
    /// {t, x, y, z} for the inhomogeneous operator; {t, x, y, z, s} after homogenization.
    static const std::shared_ptr<const VariableSet>& schrodinger() {
        static auto vs = make({{"t", 0, false}, {"x", 1, false}, {"y", 2, false}, {"z", 3, false}});
        return vs;
    }
    static const std::shared_ptr<const VariableSet>& schrodinger_fibered() {
        static auto vs =
            make({{"t", 0, false}, {"x", 1, false}, {"y", 2, false}, {"z", 3, false}, {"s", 4, false}});
        return vs;
    }

    std::size_t size() const { return vars_.size(); }
    const std::string& name(std::size_t i) const { return vars_[i].name; }
    int conjugate_of(std::size_t i) const { return vars_[i].conj; }
    bool is_laurent(std::size_t i) const { return vars_[i].laurent; }
    bool is_real(std::size_t i) const { return vars_[i].conj == static_cast<int>(i); }

    int index_of(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool same_as(const VariableSet& o) const {
        if (this == &o) return true;
        if (vars_.size() != o.vars_.size()) return false;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name != o.vars_[i].name || vars_[i].conj != o.vars_[i].conj ||
                vars_[i].laurent != o.vars_[i].laurent)
                return false;
        return true;
    }

private:
    VariableSet() = default;
    std::vector<Var> vars_;
};

/// Exponent vector over a VariableSet; only Laurent variables may be negative.
using Monomial = std::vector<int>;

inline void check_same(const std::shared_ptr<const VariableSet>& a, const std::shared_ptr<const VariableSet>& b) {
    if (!a || !b || !a->same_as(*b)) throw VariableSetMismatch("operands use different variable sets");
}

/**
 * Complex-coefficient polynomial, optionally held in sphere normal form
 * (the rewrite v*vb -> 1 - u*ub applied until no monomial carries both v and
 * vb). Coefficients are exact Scalars unless a floating constant entered.
 */
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::shared_ptr<const VariableSet> vars) : vars_(std::move(vars)) {}

    static Polynomial zero(std::shared_ptr<const VariableSet> vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(std::shared_ptr<const VariableSet> vars, Scalar c) {
        Polynomial p(std::move(vars));
        if (!c.is_zero()) p.terms_.emplace(Monomial(p.vars_->size(), 0), std::move(c));
        return p;
    }
    static Polynomial one(std::shared_ptr<const VariableSet> vars) { return constant(std::move(vars), Scalar(1)); }
    static Polynomial variable(std::shared_ptr<const VariableSet> vars, std::string_view name) {
        Polynomial p(std::move(vars));
        int i = p.vars_->index_of(name);
        if (i < 0) throw PolynomialError(std::string("unknown variable: ") + std::string(name));
        Monomial m(p.vars_->size(), 0);
        m[i] = 1;
        p.terms_.emplace(std::move(m), Scalar(1));
        return p;
    }
    static Polynomial monomial(std::shared_ptr<const VariableSet> vars, Monomial m, Scalar c) {
        Polynomial p(std::move(vars));
        if (m.size() != p.vars_->size()) throw PolynomialError("monomial size mismatch");
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] < 0 && !p.vars_->is_laurent(i))
                throw PolynomialError("negative exponent on non-Laurent variable");
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const std::shared_ptr<const VariableSet>& vars() const { return vars_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool sphere_reduced() const { return sphere_reduced_; }

    bool is_floating() const {
        for (const auto& [m, c] : terms_)
            if (!c.exact()) return true;
        return false;
    }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }
    /// Constant term; for a constant polynomial this is the value.
    Scalar constant_value() const { return coefficient(Monomial(vars_->size(), 0)); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial(vars_->size(), 0));
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (int e : m) d += e;
            deg = std::max(deg, d);
        }
        return deg;
    }
    bool is_homogeneous(int degree) const {
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (int e : m) d += e;
            if (d != degree) return false;
        }
        return true;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_same(a.vars_, b.vars_);
        Polynomial out = a;
        out.sphere_reduced_ = a.sphere_reduced_ || b.sphere_reduced_;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        if (out.sphere_reduced_) out.reduce_in_place();
        return out;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    Polynomial operator-() const {
        Polynomial out = *this;
        for (auto& [m, c] : out.terms_) c = -c;
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same(a.vars_, b.vars_);
        Polynomial out(a.vars_);
        out.sphere_reduced_ = a.sphere_reduced_ || b.sphere_reduced_;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        }
        if (out.sphere_reduced_) out.reduce_in_place();
        return out;
    }
    friend Polynomial operator*(const Scalar& c, const Polynomial& p) {
        Polynomial out(p.vars_);
        out.sphere_reduced_ = p.sphere_reduced_;
        for (const auto& [m, pc] : p.terms_) out.add_term(m, c * pc);
        return out;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!a.vars_->same_as(*b.vars_)) return false;
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Conjugates coefficients and swaps conjugation-paired variables.
    Polynomial conjugate() const {
        Polynomial out(vars_);
        out.sphere_reduced_ = sphere_reduced_;
        for (const auto& [m, c] : terms_) {
            Monomial cm(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) cm[vars_->conjugate_of(i)] = m[i];
            out.add_term(cm, c.conj());
        }
        if (out.sphere_reduced_) out.reduce_in_place();
        return out;
    }

    /// Canonical representative modulo v*vb = 1 - u*ub; marks the result.
    Polynomial normal_form() const {
        Polynomial out = *this;
        out.sphere_reduced_ = true;
        out.reduce_in_place();
        return out;
    }

    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const {
        constexpr double kPairTol = 1e-9;
        std::vector<std::complex<double>> values(vars_->size());
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            auto it = point.find(vars_->name(i));
            if (it == point.end()) throw PolynomialError("unassigned variable: " + vars_->name(i));
            values[i] = it->second;
        }
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            std::complex<double> expect = std::conj(values[vars_->conjugate_of(i)]);
            if (std::abs(values[i] - expect) > kPairTol)
                throw PolynomialError("non-conjugate assignment to pair containing " + vars_->name(i));
        }
        return eval_indexed(values);
    }

    std::complex<double> eval_indexed(std::span<const std::complex<double>> values) const {
        std::complex<double> total{0.0, 0.0};
        for (const auto& [m, c] : terms_) {
            std::complex<double> term = c.to_complex();
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                term *= std::pow(values[i], m[i]);
            }
            total += term;
        }
        return total;
    }

    /// Terms as "coeff * u^a ub^b ...", canonically sorted.
    std::string to_text() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            std::string cs = c.to_string();
            out += cs;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                out += " ";
                out += vars_->name(i);
                if (m[i] != 1) out += "^" + std::to_string(m[i]);
            }
        }
        return out;
    }

private:
    std::shared_ptr<const VariableSet> vars_;
    std::map<Monomial, Scalar> terms_;
    bool sphere_reduced_ = false;

    void add_term(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void reduce_in_place() {
        int iu = vars_->index_of("u"), iub = vars_->index_of("ub");
        int iv = vars_->index_of("v"), ivb = vars_->index_of("vb");
        if (iv < 0 || ivb < 0 || iu < 0 || iub < 0)
            throw PolynomialError("sphere normal form requires the SU(2) variables");
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = terms_.begin(); it != terms_.end(); ++it) {
                const Monomial& m = it->first;
                if (m[iv] >= 1 && m[ivb] >= 1) {
                    Scalar c = it->second;
                    Monomial base = m;
                    base[iv] -= 1;
                    base[ivb] -= 1;
                    terms_.erase(it);
                    Monomial with_u = base;
                    with_u[iu] += 1;
                    with_u[iub] += 1;
                    add_term(base, c);
                    add_term(with_u, -c);
                    changed = true;
                    break;
                }
            }
        }
    }
};

/**
 * Derivation of the polynomial algebra, defined by its action on generators
 * and extended by the Leibniz rule. Applying to a sphere-reduced polynomial
 * re-reduces the result.
 */
class Derivation {
public:
    Derivation(std::shared_ptr<const VariableSet> vars, std::vector<Polynomial> images, std::string label)
        : vars_(std::move(vars)), images_(std::move(images)), label_(std::move(label)) {
        if (images_.size() != vars_->size()) throw PolynomialError("derivation images must cover all variables");
        for (const auto& img : images_) check_same(img.vars(), vars_);
    }

    const std::shared_ptr<const VariableSet>& vars() const { return vars_; }
    const std::string& label() const { return label_; }
    const Polynomial& image(std::size_t i) const { return images_[i]; }

    Polynomial apply(const Polynomial& p) const {
        check_same(p.vars(), vars_);
        Polynomial out = Polynomial::zero(vars_);
        for (const auto& [m, c] : p.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0 || images_[i].is_zero()) continue;
                Monomial lowered = m;
                lowered[i] -= 1;
                Polynomial factor = Polynomial::monomial(vars_, lowered, c * Scalar(m[i]));
                out += factor * images_[i];
            }
        }
        if (p.sphere_reduced()) out = out.normal_form();
        return out;
    }
    Polynomial operator()(const Polynomial& p) const { return apply(p); }

    Derivation commutator(const Derivation& o, const std::string& label = "") const {
        check_same(vars_, o.vars_);
        std::vector<Polynomial> images;
        images.reserve(vars_->size());
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            Polynomial xi = Polynomial::variable(vars_, vars_->name(i));
            images.push_back(apply(o.apply(xi)) - o.apply(apply(xi)));
        }
        return Derivation(vars_, std::move(images),
                          label.empty() ? "[" + label_ + "," + o.label_ + "]" : label);
    }

    friend Derivation operator*(const Scalar& c, const Derivation& d) {
        std::vector<Polynomial> images;
        images.reserve(d.images_.size());
        for (const auto& img : d.images_) images.push_back(c * img);
        return Derivation(d.vars_, std::move(images), d.label_);
    }
    friend Derivation operator+(const Derivation& a, const Derivation& b) {
        check_same(a.vars_, b.vars_);
        std::vector<Polynomial> images;
        images.reserve(a.images_.size());
        for (std::size_t i = 0; i < a.images_.size(); ++i) images.push_back(a.images_[i] + b.images_[i]);
        return Derivation(a.vars_, std::move(images), a.label_ + "+" + b.label_);
    }
    friend Derivation operator-(const Derivation& a, const Derivation& b) { return a + Scalar(-1) * b; }

    /// sum_i weights[i] * fields[i]; weights are polynomials.
    static Derivation weighted_sum(std::span<const Derivation> fields, std::span<const Polynomial> weights,
                                   const std::string& label) {
        if (fields.empty() || fields.size() != weights.size())
            throw PolynomialError("weighted_sum: size mismatch");
        auto vars = fields[0].vars();
        std::vector<Polynomial> images(vars->size(), Polynomial::zero(vars));
        for (std::size_t f = 0; f < fields.size(); ++f) {
            check_same(fields[f].vars(), vars);
            check_same(weights[f].vars(), vars);
            for (std::size_t i = 0; i < vars->size(); ++i) images[i] += weights[f] * fields[f].image(i);
        }
        return Derivation(vars, std::move(images), label);
    }

private:
    std::shared_ptr<const VariableSet> vars_;
    std::vector<Polynomial> images_;
    std::string label_;
};

/**
 * Exact Haar integral over SU(2), normalized to total mass 1:
 *   int u^a ub^b v^c vb^d dnu = delta_ab delta_cd a! c! / (a+c+1)!
 */
inline Scalar haar_integral(const Polynomial& p) {
    const auto& vs = p.vars();
    int iu = vs->index_of("u"), iub = vs->index_of("ub");
    int iv = vs->index_of("v"), ivb = vs->index_of("vb");
    if (iu < 0 || iub < 0 || iv < 0 || ivb < 0)
        throw PolynomialError("haar_integral requires the SU(2) variables");
    Scalar total;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            int idx = static_cast<int>(i);
            if (m[i] != 0 && idx != iu && idx != iub && idx != iv && idx != ivb)
                throw PolynomialError("haar_integral: non-SU(2) variable present: " + vs->name(i));
        }
        int a = m[iu], b = m[iub], cc = m[iv], d = m[ivb];
        if (a != b || cc != d) continue;
        BigInt num = 1, den = 1;
        for (int k = 2; k <= a; ++k) num *= k;
        for (int k = 2; k <= cc; ++k) num *= k;
        for (int k = 2; k <= a + cc + 1; ++k) den *= k;
        total += c * Scalar(BigRat(num, den));
    }
    return total;
}

}  // namespace spinforms
