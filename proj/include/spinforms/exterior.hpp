#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>

#include "spinforms/frames.hpp"

namespace spinforms {

struct ManifoldMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Signature { riemannian, lorentzian };

namespace detail {

/// Sign of merging two disjoint ascending index sets: (-1)^{inversions}.
inline int shuffle_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    while (b) {
        std::uint32_t low = b & (~b + 1);                     // lowest bit of b
        inversions += std::popcount(a & ~(low - 1) & ~low);   // bits of a above it
        b &= b - 1;
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

/// Sign of removing index a (present) from mask: (-1)^{position of a in mask}.
inline int removal_sign(std::uint32_t mask, int a) {
    int pos = std::popcount(mask & ((1u << a) - 1));
    return (pos % 2 == 0) ? 1 : -1;
}

}  // namespace detail

/**
 * Differential form over a FrameManifold: a map from ascending frame-index
 * subsets (bitmasks) to polynomial coefficients. Mixed degree is allowed;
 * operators that are degree-sensitive act per homogeneous component.
 */
class DifferentialForm {
public:
    DifferentialForm() = default;
    explicit DifferentialForm(std::shared_ptr<const FrameManifold> m) : M_(std::move(m)) {}

    static DifferentialForm zero(std::shared_ptr<const FrameManifold> m) { return DifferentialForm(std::move(m)); }
    static DifferentialForm from_function(std::shared_ptr<const FrameManifold> m, Polynomial f) {
        DifferentialForm out(std::move(m));
        out.set_component(0u, std::move(f));
        return out;
    }
    static DifferentialForm frame_form(std::shared_ptr<const FrameManifold> m,
                                       std::initializer_list<int> indices) {
        DifferentialForm out(std::move(m));
        std::uint32_t mask = 0;
        for (int i : indices) {
            if (mask & (1u << i)) throw ManifoldMismatch("repeated frame index");
            mask |= 1u << i;
        }
        out.set_component(mask, Polynomial::one(out.M_->vars()));
        return out;
    }
    static DifferentialForm unit(std::shared_ptr<const FrameManifold> m) {
        Polynomial one = Polynomial::one(m->vars());
        return from_function(std::move(m), std::move(one));
    }

    const std::shared_ptr<const FrameManifold>& manifold() const { return M_; }
    const std::map<std::uint32_t, Polynomial>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Polynomial component(std::uint32_t mask) const {
        auto it = comps_.find(mask);
        return it == comps_.end() ? Polynomial::zero(M_->vars()) : it->second;
    }
    void set_component(std::uint32_t mask, Polynomial f) {
        if (std::popcount(mask) > M_->dim() || mask >= (1u << M_->dim()))
            throw ManifoldMismatch("component index outside the frame");
        check_same(f.vars(), M_->vars());
        if (f.is_zero())
            comps_.erase(mask);
        else
            comps_.insert_or_assign(mask, std::move(f));
    }
    void add_component(std::uint32_t mask, const Polynomial& f) {
        auto it = comps_.find(mask);
        if (it == comps_.end()) {
            set_component(mask, f);
        } else {
            it->second += f;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [m, f] : comps_) d = std::max(d, std::popcount(m));
        return d;
    }
    bool is_homogeneous_degree(int k) const {
        for (const auto& [m, f] : comps_)
            if (std::popcount(m) != k) return false;
        return true;
    }
    /// The degree-k part.
    DifferentialForm graded_part(int k) const {
        DifferentialForm out(M_);
        for (const auto& [m, f] : comps_)
            if (std::popcount(m) == k) out.comps_.emplace(m, f);
        return out;
    }

    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
        a.check_manifold(b);
        DifferentialForm out = a;
        for (const auto& [m, f] : b.comps_) out.add_component(m, f);
        return out;
    }
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
        return a + (Scalar(-1) * b);
    }
    friend DifferentialForm operator*(const Scalar& c, const DifferentialForm& a) {
        DifferentialForm out(a.M_);
        for (const auto& [m, f] : a.comps_) out.add_component(m, c * f);
        return out;
    }
    friend DifferentialForm operator*(const Polynomial& p, const DifferentialForm& a) {
        DifferentialForm out(a.M_);
        for (const auto& [m, f] : a.comps_) out.add_component(m, p * f);
        return out;
    }
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
        return a.M_->same_as(*b.M_) && a.comps_ == b.comps_;
    }
    friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) { return !(a == b); }

    void check_manifold(const DifferentialForm& o) const {
        if (!M_ || !o.M_ || !M_->same_as(*o.M_)) throw ManifoldMismatch("forms live on different manifolds");
    }

private:
    std::shared_ptr<const FrameManifold> M_;
    std::map<std::uint32_t, Polynomial> comps_;
};

inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    a.check_manifold(b);
    DifferentialForm out(a.manifold());
    for (const auto& [ma, fa] : a.components()) {
        for (const auto& [mb, fb] : b.components()) {
            if (ma & mb) continue;
            int sign = detail::shuffle_sign(ma, mb);
            out.add_component(ma | mb, Scalar(sign) * (fa * fb));
        }
    }
    return out;
}

/// Interior product with the frame field e_a.
inline DifferentialForm contract(int frame_index, const DifferentialForm& a) {
    DifferentialForm out(a.manifold());
    std::uint32_t bit = 1u << frame_index;
    for (const auto& [m, f] : a.components()) {
        if (!(m & bit)) continue;
        out.add_component(m & ~bit, Scalar(detail::removal_sign(m, frame_index)) * f);
    }
    return out;
}

/// Interior product with X = sum_a weights[a] e_a.
inline DifferentialForm contract(std::span<const Polynomial> weights, const DifferentialForm& a) {
    if (static_cast<int>(weights.size()) != a.manifold()->dim())
        throw ManifoldMismatch("contraction weights must match the frame dimension");
    DifferentialForm out(a.manifold());
    for (int i = 0; i < a.manifold()->dim(); ++i) {
        if (weights[i].is_zero()) continue;
        out = out + weights[i] * contract(i, a);
    }
    return out;
}

/**
 * Hodge dual for the diagonal frame metric:
 *   *(f theta^I) = f * (prod_{a in I} g^{aa}) * vol_coeff * sign(I, I^c) theta^{I^c}.
 */
inline DifferentialForm hodge_star(const DifferentialForm& a) {
    const auto& M = a.manifold();
    std::uint32_t full = (1u << M->dim()) - 1;
    DifferentialForm out(M);
    for (const auto& [m, f] : a.components()) {
        Polynomial factor = f * M->volume_coeff();
        for (int i = 0; i < M->dim(); ++i)
            if (m & (1u << i)) factor *= M->inverse_metric_entry(i);
        std::uint32_t comp = full & ~m;
        out.add_component(comp, Scalar(detail::shuffle_sign(m, comp)) * factor);
    }
    return out;
}

/**
 * Exterior derivative in the global coframe:
 *   d(f theta^I) = sum_a e_a(f) theta^a ^ theta^I
 *                + f sum_j (-1)^{j-1} d theta^{a_j} ^ theta^{I minus a_j},
 * with d theta^a = -(1/2) c^a_{bc} theta^b ^ theta^c.
 */
inline DifferentialForm exterior_derivative(const DifferentialForm& alpha) {
    const auto& M = alpha.manifold();
    int n = M->dim();
    DifferentialForm out(M);
    for (const auto& [mask, f] : alpha.components()) {
        for (int a = 0; a < n; ++a) {
            if (mask & (1u << a)) continue;
            Polynomial df = M->frame_action(a).apply(f);
            if (df.is_zero()) continue;
            out.add_component(mask | (1u << a), Scalar(detail::shuffle_sign(1u << a, mask)) * df);
        }
        // structure-constant part
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            int slot_sign = (pos % 2 == 0) ? 1 : -1;
            ++pos;
            std::uint32_t rest = mask & ~(1u << j);
            for (int b = 0; b < n; ++b) {
                for (int c = b + 1; c < n; ++c) {
                    Scalar cabc = M->structure_constant(j, b, c);
                    if (cabc.is_zero()) continue;
                    std::uint32_t bc = (1u << b) | (1u << c);
                    if (bc & rest) continue;
                    int sign = detail::shuffle_sign(bc, rest) * slot_sign;
                    out.add_component(bc | rest, Scalar(-sign) * (cabc * f));
                }
            }
        }
    }
    return out;
}

/// delta = (-1)^{n(k-1)+1} * d * on degree-k input (Riemannian); the
/// Lorentzian variant drops the trailing +1 in the exponent.
inline DifferentialForm codifferential(const DifferentialForm& alpha,
                                       Signature sig = Signature::riemannian) {
    const auto& M = alpha.manifold();
    int n = M->dim();
    DifferentialForm out(M);
    for (int k = 0; k <= n; ++k) {
        DifferentialForm part = alpha.graded_part(k);
        if (part.is_zero() || k == 0) continue;
        int expo = n * (k - 1) + (sig == Signature::riemannian ? 1 : 0);
        Scalar sign((expo % 2 == 0) ? 1 : -1);
        out = out + sign * hodge_star(exterior_derivative(hodge_star(part)));
    }
    return out;
}

inline DifferentialForm laplace_beltrami(const DifferentialForm& alpha,
                                         Signature sig = Signature::riemannian) {
    return exterior_derivative(codifferential(alpha, sig)) + codifferential(exterior_derivative(alpha), sig);
}

/// The scalar Dirac operator d - delta, acting on all degrees at once.
inline DifferentialForm dirac_kahler(const DifferentialForm& alpha,
                                     Signature sig = Signature::riemannian) {
    return exterior_derivative(alpha) - codifferential(alpha, sig);
}

/// Lie derivative along the frame field e_a (Cartan formula).
inline DifferentialForm lie_derivative(int frame_index, const DifferentialForm& alpha) {
    return contract(frame_index, exterior_derivative(alpha)) +
           exterior_derivative(contract(frame_index, alpha));
}

/// Lie derivative along X = sum_a weights[a] e_a.
inline DifferentialForm lie_derivative(std::span<const Polynomial> weights, const DifferentialForm& alpha) {
    return contract(weights, exterior_derivative(alpha)) +
           exterior_derivative(contract(weights, alpha));
}

/**
 * Pointwise inner product, conjugate-linear in the first slot. Components of
 * distinct index subsets are orthogonal, which in particular makes distinct
 * degrees orthogonal.
 */
inline Polynomial pointwise_inner(const DifferentialForm& a, const DifferentialForm& b) {
    a.check_manifold(b);
    const auto& M = a.manifold();
    Polynomial out = Polynomial::zero(M->vars());
    for (const auto& [m, fa] : a.components()) {
        auto it = b.components().find(m);
        if (it == b.components().end()) continue;
        Polynomial term = fa.conjugate() * it->second;
        for (int i = 0; i < M->dim(); ++i)
            if (m & (1u << i)) term *= M->inverse_metric_entry(i);
        out += term;
    }
    return out;
}

/// L2 inner product; exact via the Haar integral on the closed SU(2) manifold.
inline Scalar l2_inner(const DifferentialForm& a, const DifferentialForm& b) {
    a.check_manifold(b);
    if (!a.manifold()->haar_integrable())
        throw UnsupportedDomain("l2_inner: no symbolic measure on a non-compact manifold");
    return haar_integral(pointwise_inner(a, b).normal_form());
}

struct FormInnerProductReport {
    Polynomial pointwise;
    Scalar integrated;
    bool degree_compatible = true;
};

inline FormInnerProductReport inner_report(const DifferentialForm& a, const DifferentialForm& b) {
    FormInnerProductReport rep;
    rep.pointwise = pointwise_inner(a, b);
    rep.integrated = l2_inner(a, b);
    int da = a.max_degree(), db = b.max_degree();
    rep.degree_compatible = a.is_homogeneous_degree(da) && b.is_homogeneous_degree(db) && da == db;
    return rep;
}

}  // namespace spinforms
