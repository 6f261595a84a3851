#pragma once

#include <array>
#include <memory>
#include <optional>

#include "spinforms/polynomial.hpp"

namespace spinforms {

struct FrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Symbolic 2x2 matrix over a polynomial ring; enough for the SU(2) bookkeeping.
struct Mat2 {
    std::array<Polynomial, 4> e;  // row-major
    const Polynomial& at(int r, int c) const { return e[2 * r + c]; }
    Polynomial& at(int r, int c) { return e[2 * r + c]; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 out{{Polynomial::zero(a.e[0].vars()), Polynomial::zero(a.e[0].vars()),
                  Polynomial::zero(a.e[0].vars()), Polynomial::zero(a.e[0].vars())}};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                for (int k = 0; k < 2; ++k) out.at(r, c) += a.at(r, k) * b.at(k, c);
        return out;
    }
    Polynomial trace() const { return e[0] + e[3]; }
};

/// s = ((u, -vb), (v, ub)) and its inverse (u,v on the unit sphere).
inline Mat2 group_element(const std::shared_ptr<const VariableSet>& vars) {
    auto P = [&](const char* n) { return Polynomial::variable(vars, n); };
    return Mat2{{P("u"), -P("vb"), P("v"), P("ub")}};
}
inline Mat2 group_element_inverse(const std::shared_ptr<const VariableSet>& vars) {
    auto P = [&](const char* n) { return Polynomial::variable(vars, n); };
    return Mat2{{P("ub"), P("vb"), -P("v"), P("u")}};
}
/// Pauli matrix as a constant polynomial matrix.
inline Mat2 pauli(const std::shared_ptr<const VariableSet>& vars, int a) {
    auto C = [&](Scalar s) { return Polynomial::constant(vars, std::move(s)); };
    Polynomial z = Polynomial::zero(vars);
    Scalar i = Scalar::imaginary_unit();
    switch (a) {
        case 1: return Mat2{{z, C(Scalar(1)), C(Scalar(1)), z}};
        case 2: return Mat2{{z, -C(i), C(i), z}};
        case 3: return Mat2{{C(Scalar(1)), z, z, -C(Scalar(1))}};
    }
    throw FrameError("pauli: axis must be 1, 2 or 3");
}

}  // namespace detail

/**
 * Left-invariant vector field X_a on SU(2), calibrated as
 *   X_a f(s) = d/dt f(s exp(-i t sigma_a / 2)) |_{t=0},
 * so that X_3 u = -(i/2) u. Works over any variable set containing
 * {u, v, ub, vb}; extra variables are annihilated.
 */
inline Derivation su2_left_invariant_field(const std::shared_ptr<const VariableSet>& vars, int axis) {
    // Tangent matrix s * (-i sigma_a / 2) read against ds = ((du, -dvb), (dv, dub)).
    auto s = detail::group_element(vars);
    auto gen = detail::pauli(vars, axis);
    Scalar minus_i_half = Scalar(BigRat(0), BigRat(-1, 2));
    detail::Mat2 tangent = s * gen;
    for (auto& entry : tangent.e) entry = minus_i_half * entry;

    std::vector<Polynomial> images(vars->size(), Polynomial::zero(vars));
    images[vars->index_of("u")] = tangent.at(0, 0);
    images[vars->index_of("vb")] = -tangent.at(0, 1);
    images[vars->index_of("v")] = tangent.at(1, 0);
    images[vars->index_of("ub")] = tangent.at(1, 1);
    return Derivation(vars, std::move(images), "X" + std::to_string(axis));
}

/// Right-invariant field L_a: the generator of left translation,
/// L_a f(s) = d/dt f(exp(-i t sigma_a / 2) s) |_{t=0}. Commutes with every X_b.
inline Derivation su2_right_invariant_field(const std::shared_ptr<const VariableSet>& vars, int axis) {
    auto s = detail::group_element(vars);
    auto gen = detail::pauli(vars, axis);
    Scalar minus_i_half = Scalar(BigRat(0), BigRat(-1, 2));
    detail::Mat2 tangent = gen * s;
    for (auto& entry : tangent.e) entry = minus_i_half * entry;

    std::vector<Polynomial> images(vars->size(), Polynomial::zero(vars));
    images[vars->index_of("u")] = tangent.at(0, 0);
    images[vars->index_of("vb")] = -tangent.at(0, 1);
    images[vars->index_of("v")] = tangent.at(1, 0);
    images[vars->index_of("ub")] = tangent.at(1, 1);
    return Derivation(vars, std::move(images), "L" + std::to_string(axis));
}

/**
 * The bundle projection S^3 -> S^2: the three quadratics xhat_i defined by
 * xhat_i sigma^i = s sigma^3 s^{-1}. Returned in sphere normal form, so
 * sum xhat_i^2 == 1 exactly.
 */
inline std::array<Polynomial, 3> hopf_projection(const std::shared_ptr<const VariableSet>& vars) {
    auto s = detail::group_element(vars);
    auto sinv = detail::group_element_inverse(vars);
    detail::Mat2 conj = s * detail::pauli(vars, 3) * sinv;
    Scalar half(BigRat(1, 2));
    // x_a = (1/2) tr(sigma_a M) for M = x_b sigma^b.
    return {
        (half * (detail::pauli(vars, 1) * conj).trace()).normal_form(),
        (half * (detail::pauli(vars, 2) * conj).trace()).normal_form(),
        (half * (detail::pauli(vars, 3) * conj).trace()).normal_form(),
    };
}

/// Expansion of L_a in the left-invariant frame: L_a = sum_b w_b X_b with
/// w_b = (1/2) tr(sigma_b s^{-1} sigma_a s).
inline std::array<Polynomial, 3> right_invariant_weights(const std::shared_ptr<const VariableSet>& vars,
                                                         int axis) {
    auto s = detail::group_element(vars);
    auto sinv = detail::group_element_inverse(vars);
    detail::Mat2 conj = sinv * detail::pauli(vars, axis) * s;
    Scalar half(BigRat(1, 2));
    return {
        (half * (detail::pauli(vars, 1) * conj).trace()).normal_form(),
        (half * (detail::pauli(vars, 2) * conj).trace()).normal_form(),
        (half * (detail::pauli(vars, 3) * conj).trace()).normal_form(),
    };
}

/// The constraint operator xhat^a L_a as a single derivation.
inline Derivation hopf_constraint_field(const std::shared_ptr<const VariableSet>& vars) {
    auto xhat = hopf_projection(vars);
    std::vector<Derivation> fields = {su2_right_invariant_field(vars, 1), su2_right_invariant_field(vars, 2),
                                      su2_right_invariant_field(vars, 3)};
    std::vector<Polynomial> weights(xhat.begin(), xhat.end());
    return Derivation::weighted_sum(fields, weights, "xhat.L");
}

/**
 * Parallelizable manifold presented through a global coframe: frame labels,
 * the dual frame fields as derivations on the coordinate algebra, diagonal
 * metric entries, and structure constants fixing the Maurer-Cartan relations
 *   d theta^a = -(1/2) c^a_{bc} theta^b ^ theta^c.
 */
class FrameManifold {
public:
    static std::shared_ptr<const FrameManifold> euclidean_r3() {
        auto vars = VariableSet::euclid3();
        auto m = std::shared_ptr<FrameManifold>(new FrameManifold());
        m->name_ = "euclidean_r3";
        m->vars_ = vars;
        m->frame_labels_ = {"dx", "dy", "dz"};
        for (int i = 0; i < 3; ++i) {
            std::vector<Polynomial> images(3, Polynomial::zero(vars));
            images[i] = Polynomial::one(vars);
            m->frame_actions_.emplace_back(vars, std::move(images), "d/d" + vars->name(i));
            m->metric_diag_.push_back(Polynomial::one(vars));
        }
        m->structure_.assign(27, Scalar());
        m->haar_integrable_ = false;
        m->volume_coeff_ = Polynomial::one(vars);
        return m;
    }

    static std::shared_ptr<const FrameManifold> su2_killing() {
        auto vars = VariableSet::su2();
        auto m = std::shared_ptr<FrameManifold>(new FrameManifold());
        m->name_ = "su2_killing";
        m->vars_ = vars;
        m->frame_labels_ = {"th1", "th2", "th3"};
        for (int a = 1; a <= 3; ++a) {
            m->frame_actions_.push_back(su2_left_invariant_field(vars, a));
            m->metric_diag_.push_back(Polynomial::one(vars));
        }
        m->structure_.assign(27, Scalar());
        m->set_epsilon_structure(0);
        m->haar_integrable_ = true;
        m->volume_coeff_ = Polynomial::one(vars);
        return m;
    }

    /// R^4_0 with metric diag(1, r^2, r^2, k) in the coframe (dr, th1, th2, th3).
    static std::shared_ptr<const FrameManifold> r4_monopole(const Scalar& k) {
        if (!(k.is_real() && k.real_approx() > 0.0)) throw FrameError("r4_monopole: k must be positive");
        auto vars = VariableSet::monopole4();
        auto m = std::shared_ptr<FrameManifold>(new FrameManifold());
        m->name_ = "r4_monopole(k=" + k.to_string() + ")";
        m->vars_ = vars;
        m->frame_labels_ = {"dr", "th1", "th2", "th3"};

        std::vector<Polynomial> dr_images(vars->size(), Polynomial::zero(vars));
        dr_images[vars->index_of("r")] = Polynomial::one(vars);
        m->frame_actions_.emplace_back(vars, std::move(dr_images), "d/dr");
        for (int a = 1; a <= 3; ++a) m->frame_actions_.push_back(su2_left_invariant_field(vars, a));

        Monomial r2(vars->size(), 0);
        r2[vars->index_of("r")] = 2;
        m->metric_diag_.push_back(Polynomial::one(vars));
        m->metric_diag_.push_back(Polynomial::monomial(vars, r2, Scalar(1)));
        m->metric_diag_.push_back(Polynomial::monomial(vars, r2, Scalar(1)));
        m->metric_diag_.push_back(Polynomial::constant(vars, k));

        m->structure_.assign(64, Scalar());
        m->set_epsilon_structure(1);
        m->haar_integrable_ = false;
        m->volume_coeff_ = Polynomial::monomial(vars, r2, k.sqrt());
        return m;
    }

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(frame_labels_.size()); }
    const std::shared_ptr<const VariableSet>& vars() const { return vars_; }
    const std::vector<std::string>& frame_labels() const { return frame_labels_; }
    const Derivation& frame_action(int a) const { return frame_actions_.at(a); }
    const Polynomial& metric_entry(int a) const { return metric_diag_.at(a); }
    const std::vector<Polynomial>& metric_diag() const { return metric_diag_; }
    bool haar_integrable() const { return haar_integrable_; }
    /// Coefficient of the metric volume form: sqrt(prod of metric entries).
    const Polynomial& volume_coeff() const { return volume_coeff_; }

    Scalar structure_constant(int a, int b, int c) const {
        int n = dim();
        return structure_.at(static_cast<std::size_t>((a * n + b) * n + c));
    }

    int frame_index(std::string_view label) const {
        for (std::size_t i = 0; i < frame_labels_.size(); ++i)
            if (frame_labels_[i] == label) return static_cast<int>(i);
        return -1;
    }

    bool same_as(const FrameManifold& o) const { return this == &o || name_ == o.name_; }

    /// Metric entries here are invertible monomials; used by Hodge and Clifford.
    Polynomial inverse_metric_entry(int a) const {
        const Polynomial& p = metric_diag_.at(a);
        if (p.terms().size() != 1) throw FrameError("metric entry is not an invertible monomial");
        const auto& [mono, coeff] = *p.terms().begin();
        Monomial inv(mono.size());
        for (std::size_t i = 0; i < mono.size(); ++i) {
            inv[i] = -mono[i];
            if (inv[i] < 0 && !vars_->is_laurent(i)) throw FrameError("metric entry not invertible in the ring");
        }
        return Polynomial::monomial(vars_, inv, Scalar(1) / coeff);
    }

private:
    FrameManifold() = default;

    /// c^a_{bc} = epsilon_{abc} on the three group frame slots starting at base.
    void set_epsilon_structure(int base) {
        int n = dim();
        auto set = [&](int a, int b, int c, int sign) {
            structure_[static_cast<std::size_t>((a * n + b) * n + c)] = Scalar(sign);
        };
        set(base + 0, base + 1, base + 2, 1);
        set(base + 0, base + 2, base + 1, -1);
        set(base + 1, base + 2, base + 0, 1);
        set(base + 1, base + 0, base + 2, -1);
        set(base + 2, base + 0, base + 1, 1);
        set(base + 2, base + 1, base + 0, -1);
    }

    std::string name_;
    std::shared_ptr<const VariableSet> vars_;
    std::vector<std::string> frame_labels_;
    std::vector<Derivation> frame_actions_;
    std::vector<Polynomial> metric_diag_;
    std::vector<Scalar> structure_;
    bool haar_integrable_ = false;
    Polynomial volume_coeff_;
};

/**
 * Scalar second-order differential operator
 *   sum_{i,j} a_ij d_i d_j + sum_i b_i d_i + c
 * with a symmetric; coordinates are the variables of its ring.
 */
struct SecondOrderOperator {
    std::shared_ptr<const VariableSet> coords;
    std::map<std::pair<int, int>, Polynomial> second;  // keys i <= j; value is a_ij (= a_ji)
    std::map<int, Polynomial> first;
    Polynomial zeroth;

    static SecondOrderOperator empty(std::shared_ptr<const VariableSet> coords) {
        SecondOrderOperator op;
        op.zeroth = Polynomial::zero(coords);
        op.coords = std::move(coords);
        return op;
    }

    /// i d_t + Laplacian(x,y,z) - V over the {t,x,y,z} coordinates.
    static SecondOrderOperator schrodinger(const Polynomial& potential) {
        auto coords = VariableSet::schrodinger();
        check_same(potential.vars(), coords);
        auto op = empty(coords);
        for (const char* n : {"x", "y", "z"}) {
            int i = coords->index_of(n);
            op.second[{i, i}] = Polynomial::one(coords);
        }
        op.first[coords->index_of("t")] = Polynomial::constant(coords, Scalar::imaginary_unit());
        op.zeroth = -potential;
        return op;
    }

    Polynomial a(int i, int j) const {
        auto key = std::minmax(i, j);
        auto it = second.find({key.first, key.second});
        return it == second.end() ? Polynomial::zero(coords) : it->second;
    }

    /// Applies the operator to a polynomial (coordinate partial derivatives).
    Polynomial apply(const Polynomial& f) const {
        check_same(f.vars(), coords);
        Polynomial out = zeroth * f;
        auto partial = [&](int i, const Polynomial& g) {
            std::vector<Polynomial> images(coords->size(), Polynomial::zero(coords));
            images[i] = Polynomial::one(coords);
            return Derivation(coords, std::move(images), "d").apply(g);
        };
        for (const auto& [i, b] : first) out += b * partial(i, f);
        for (const auto& [ij, aij] : second) {
            Polynomial dd = partial(ij.first, partial(ij.second, f));
            Scalar mult = ij.first == ij.second ? Scalar(1) : Scalar(2);
            out += mult * (aij * dd);
        }
        return out;
    }
};

/// The symmetric second-order coefficient tensor of the operator.
inline std::vector<std::vector<Polynomial>> principal_symbol(const SecondOrderOperator& op) {
    std::size_t n = op.coords->size();
    std::vector<std::vector<Polynomial>> sym(n, std::vector<Polynomial>(n, Polynomial::zero(op.coords)));
    for (const auto& [ij, aij] : op.second) {
        sym[ij.first][ij.second] = aij;
        sym[ij.second][ij.first] = aij;
    }
    return sym;
}

/**
 * Homogenizes a Schroedinger-shaped operator by adding the fiber coordinate:
 * i d_t + Lap - V  becomes  d_s d_t + Lap + V d_s^2 over {t,x,y,z,s}.
 */
inline SecondOrderOperator homogenize_schrodinger(const SecondOrderOperator& op,
                                                  const std::string& fiber_label = "s") {
    auto coords = op.coords;
    bool shape_ok = op.second.size() == 3;
    for (const char* n : {"x", "y", "z"}) {
        int i = coords ? coords->index_of(n) : -1;
        if (i < 0 || op.a(i, i) != Polynomial::one(coords)) shape_ok = false;
    }
    int it_idx = coords ? coords->index_of("t") : -1;
    shape_ok = shape_ok && it_idx >= 0 && op.first.size() == 1 && op.first.count(it_idx) == 1 &&
               op.first.at(it_idx) == Polynomial::constant(coords, Scalar::imaginary_unit());
    if (!shape_ok) throw FrameError("homogenize: operator is not of Schroedinger shape");
    if (fiber_label != "s") throw FrameError("homogenize: fiber coordinate must be named s");

    auto fibered = VariableSet::schrodinger_fibered();
    auto transplant = [&](const Polynomial& p) {
        Polynomial out = Polynomial::zero(fibered);
        for (const auto& [m, c] : p.terms()) {
            Monomial fm(fibered->size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                fm[fibered->index_of(coords->name(i))] = m[i];
            }
            out += Polynomial::monomial(fibered, fm, c);
        }
        return out;
    };

    auto out = SecondOrderOperator::empty(fibered);
    int is_idx = fibered->index_of("s");
    int ift = fibered->index_of("t");
    for (const char* n : {"x", "y", "z"}) {
        int i = fibered->index_of(n);
        out.second[{i, i}] = Polynomial::one(fibered);
    }
    auto st = std::minmax(is_idx, ift);
    out.second[{st.first, st.second}] = Polynomial::constant(fibered, Scalar(BigRat(1, 2)));
    Polynomial potential = transplant(-op.zeroth);
    if (!potential.is_zero()) out.second[{is_idx, is_idx}] = potential;
    return out;
}

/**
 * Applies the operator to e^{phase * i s} * f for s-independent f and strips
 * the phase: every d_s becomes multiplication by phase * i.
 */
inline Polynomial apply_on_phase_section(const SecondOrderOperator& op, const Polynomial& f, int phase) {
    check_same(f.vars(), op.coords);
    int is_idx = op.coords->index_of("s");
    if (is_idx < 0) throw FrameError("apply_on_phase_section: no fiber coordinate");
    Scalar ip = Scalar(BigRat(0), BigRat(phase));
    auto partial = [&](int i, const Polynomial& g) -> Polynomial {
        if (i == is_idx) return ip * g;
        std::vector<Polynomial> images(op.coords->size(), Polynomial::zero(op.coords));
        images[i] = Polynomial::one(op.coords);
        return Derivation(op.coords, std::move(images), "d").apply(g);
    };
    Polynomial out = op.zeroth * f;
    for (const auto& [i, b] : op.first) out += b * partial(i, f);
    for (const auto& [ij, aij] : op.second) {
        Scalar mult = ij.first == ij.second ? Scalar(1) : Scalar(2);
        out += mult * (aij * partial(ij.first, partial(ij.second, f)));
    }
    return out;
}

}  // namespace spinforms
