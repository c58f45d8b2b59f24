// Copyright 2026 The Plateau Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "plateau/gradients.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace plateau {
namespace {

Matrix exp_minus_i(const Operator &generator, double theta) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(generator.matrix());
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    Vector phases(lambda.size());
    for (Index i = 0; i < lambda.size(); ++i) {
        phases[i] = std::polar(1.0, -theta * lambda[i]);
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double max_abs_eigenvalue(const Operator &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h.matrix(), Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

void apply_layer(Matrix &m, int n, const Layer &layer) {
    if (const auto *p = std::get_if<ParametrizedLayer>(&layer)) {
        const Matrix gate = exp_minus_i(p->generator, p->theta);
        if (p->qubit) {
            apply_local_gate_to_columns(m, n, gate, *p->qubit);
        } else {
            m = gate * m;
        }
    } else if (const auto *f = std::get_if<FixedLayer>(&layer)) {
        if (f->qubit) {
            apply_local_gate_to_columns(m, n, f->gate.matrix(), *f->qubit);
        } else {
            m = f->gate.matrix() * m;
        }
    } else {
        apply_diagonal_to_columns(m, std::get<DiagonalLayer>(layer).phases);
    }
}

void check_parameter(const LayeredAnsatz &a, std::size_t k) {
    if (k >= a.num_parameters()) {
        throw DimensionError("parameter index " + std::to_string(k) +
                             " out of range for " +
                             std::to_string(a.num_parameters()) + " parameters");
    }
}

// G_k applied to the columns of m (G_k local or global).
Matrix apply_generator(const LayeredAnsatz &a, std::size_t k, Matrix m) {
    const ParametrizedLayer &p = a.parametrized(k);
    if (p.qubit) {
        apply_local_gate_to_columns(m, a.n_qubits(), p.generator.matrix(), *p.qubit);
        return m;
    }
    return p.generator.matrix() * m;
}

double variance_in(const Vector &state, const Vector &g_state) {
    const double second = g_state.squaredNorm();
    const double first = state.dot(g_state).real();
    return second - first * first;
}

// Tr_D |x><y| for vectors on S (x) D with D the trailing qubits.
Matrix trace_out_dilation(const Vector &x, const Vector &y, Index d_s) {
    const Index d_d = x.size() / d_s;
    Eigen::Map<const Matrix> xm(x.data(), d_d, d_s);
    Eigen::Map<const Matrix> ym(y.data(), d_d, d_s);
    return xm.transpose() * ym.conjugate();
}

struct PropagatedTerm {
    Vector a;  // U |psi>
    Vector ja; // J U |psi>
};

std::vector<PropagatedTerm> propagate(const std::vector<FactorizedGenTerm> &terms,
                                      const LayeredAnsatz &a, std::size_t k,
                                      int n_system) {
    check_parameter(a, k);
    validate_factorized_terms(terms, n_system, a.n_qubits() - n_system);
    const std::size_t split = a.layer_of_parameter(k) + 1;
    const Index d = dim_for_qubits(a.n_qubits());
    Matrix r(d, static_cast<Index>(terms.size()));
    for (std::size_t l = 0; l < terms.size(); ++l) {
        r.col(static_cast<Index>(l)) = terms[l].psi_sd.amplitudes();
    }
    apply_layers(r, a, 0, split);
    Matrix gr = apply_generator(a, k, r);
    apply_layers(r, a, split, a.layers().size());
    apply_layers(gr, a, split, a.layers().size());
    std::vector<PropagatedTerm> out;
    for (Index l = 0; l < r.cols(); ++l) {
        out.push_back({r.col(l), gr.col(l)});
    }
    return out;
}

double pair_coefficient(const Operator &hl, const Operator &hm, double d) {
    const double tr_hlhm = hl.matrix().cwiseProduct(hm.matrix().transpose()).sum().real();
    const double tr_hl = hl.trace().real();
    const double tr_hm = hm.trace().real();
    return tr_hlhm / (d * d - 1.0) - tr_hl * tr_hm / (d * (d * d - 1.0));
}

} // namespace

Layer rotation_layer(Axis axis, QubitIndex q, double theta) {
    Matrix g = 0.5 * gates::pauli(axis).matrix();
    return ParametrizedLayer{Operator(std::move(g), OperatorKind::hermitian), q, theta};
}

// ------------------------------------------------------------ LayeredAnsatz

LayeredAnsatz::LayeredAnsatz(int n_qubits, std::vector<Layer> layers)
    : n_qubits_(n_qubits), layers_(std::move(layers)) {
    if (n_qubits < 1) {
        throw DimensionError("ansatz needs at least one qubit");
    }
    const Index d = dim_for_qubits(n_qubits);
    auto check_dim = [&](const Operator &op, const std::optional<QubitIndex> &q) {
        if (q) {
            check_qubit(*q, n_qubits);
            if (op.dim() != 2) {
                throw DimensionError("local layer expects a 2x2 operator");
            }
        } else if (op.dim() != d) {
            throw DimensionError("global layer dimension " + std::to_string(op.dim()) +
                                 " does not match register dimension " +
                                 std::to_string(d));
        }
    };
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        if (const auto *p = std::get_if<ParametrizedLayer>(&layers_[i])) {
            check_dim(p->generator, p->qubit);
            if (p->generator.kind() != OperatorKind::hermitian &&
                hermiticity_defect(p->generator.matrix()) > 1e-10) {
                throw InvariantError("layer generator is not hermitian");
            }
            if (!std::isfinite(p->theta)) {
                throw InvariantError("layer parameter is not finite");
            }
            param_layers_.push_back(i);
        } else if (const auto *f = std::get_if<FixedLayer>(&layers_[i])) {
            check_dim(f->gate, f->qubit);
            if (f->gate.kind() != OperatorKind::unitary &&
                unitarity_defect(f->gate.matrix()) > 1e-10) {
                throw InvariantError("fixed layer is not unitary");
            }
        } else {
            const auto &phases = std::get<DiagonalLayer>(layers_[i]).phases;
            if (static_cast<Index>(phases.size()) != d) {
                throw DimensionError("diagonal layer length does not match register");
            }
            for (const cplx &z : phases) {
                if (std::abs(std::abs(z) - 1.0) > 1e-10) {
                    throw InvariantError("diagonal layer entries must be unimodular");
                }
            }
        }
    }
}

std::size_t LayeredAnsatz::layer_of_parameter(std::size_t k) const {
    check_parameter(*this, k);
    return param_layers_[k];
}

const ParametrizedLayer &LayeredAnsatz::parametrized(std::size_t k) const {
    return std::get<ParametrizedLayer>(layers_[layer_of_parameter(k)]);
}

double LayeredAnsatz::parameter(std::size_t k) const { return parametrized(k).theta; }

std::vector<double> LayeredAnsatz::parameters() const {
    std::vector<double> out;
    out.reserve(param_layers_.size());
    for (std::size_t idx : param_layers_) {
        out.push_back(std::get<ParametrizedLayer>(layers_[idx]).theta);
    }
    return out;
}

LayeredAnsatz LayeredAnsatz::with_parameter(std::size_t k, double theta) const {
    if (!std::isfinite(theta)) {
        throw InvariantError("layer parameter is not finite");
    }
    LayeredAnsatz copy = *this;
    std::get<ParametrizedLayer>(copy.layers_[copy.layer_of_parameter(k)]).theta = theta;
    return copy;
}

LayeredAnsatz LayeredAnsatz::with_parameters(const std::vector<double> &thetas) const {
    if (thetas.size() != param_layers_.size()) {
        throw DimensionError("with_parameters: expected " +
                             std::to_string(param_layers_.size()) + " values");
    }
    LayeredAnsatz copy = *this;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        if (!std::isfinite(thetas[k])) {
            throw InvariantError("layer parameter is not finite");
        }
        std::get<ParametrizedLayer>(copy.layers_[param_layers_[k]]).theta = thetas[k];
    }
    return copy;
}

Operator LayeredAnsatz::generator(std::size_t k) const {
    const ParametrizedLayer &p = parametrized(k);
    if (p.qubit) {
        return embed_local(p.generator, *p.qubit, n_qubits_);
    }
    return p.generator;
}

// ------------------------------------------------------------- application

void apply_layers(Matrix &m, const LayeredAnsatz &a, std::size_t begin,
                  std::size_t end) {
    end = std::min(end, a.layers().size());
    for (std::size_t i = begin; i < end; ++i) {
        apply_layer(m, a.n_qubits(), a.layers()[i]);
    }
}

Operator ansatz_unitary(const LayeredAnsatz &a) {
    const Index d = dim_for_qubits(a.n_qubits());
    Matrix m = Matrix::Identity(d, d);
    apply_layers(m, a, 0, a.layers().size());
    return Operator::unchecked(std::move(m), OperatorKind::unitary);
}

StateVector apply_ansatz(const LayeredAnsatz &a, const StateVector &psi) {
    if (psi.n_qubits() != a.n_qubits()) {
        throw DimensionError("apply_ansatz: state width differs from ansatz");
    }
    Matrix m = psi.amplitudes();
    apply_layers(m, a, 0, a.layers().size());
    return StateVector::normalized(a.n_qubits(), m.col(0));
}

Operator right_unitary(const LayeredAnsatz &a, std::size_t k) {
    const Index d = dim_for_qubits(a.n_qubits());
    Matrix m = Matrix::Identity(d, d);
    apply_layers(m, a, 0, a.layer_of_parameter(k) + 1);
    return Operator::unchecked(std::move(m), OperatorKind::unitary);
}

Operator left_unitary(const LayeredAnsatz &a, std::size_t k) {
    const Index d = dim_for_qubits(a.n_qubits());
    Matrix m = Matrix::Identity(d, d);
    apply_layers(m, a, a.layer_of_parameter(k) + 1, a.layers().size());
    return Operator::unchecked(std::move(m), OperatorKind::unitary);
}

std::size_t scrambler_parameter_index(int n_qubits, int period, int qubit,
                                      Axis axis) {
    // Applied order within a qubit block is z, y, x.
    const int offset = 2 - static_cast<int>(axis);
    return static_cast<std::size_t>((period * n_qubits + qubit) * 3 + offset);
}

LayeredAnsatz scrambler_ansatz(const ScramblerSpec &spec) {
    spec.validate();
    const int n = spec.n_qubits;
    std::vector<Layer> layers;
    layers.reserve(static_cast<std::size_t>(spec.t * (3 * n + 1)));
    const auto phases = entangler_phases(n, spec.g);
    for (int p = 0; p < spec.t; ++p) {
        for (int q = 0; q < n; ++q) {
            for (Axis axis : {Axis::z, Axis::y, Axis::x}) {
                layers.push_back(rotation_layer(axis, QubitIndex{q}, spec.angle(p, q, axis)));
            }
        }
        layers.emplace_back(DiagonalLayer{phases});
    }
    return LayeredAnsatz(n, std::move(layers));
}

ShiftedPair shifted_unitaries(const LayeredAnsatz &a, std::size_t k, double shift) {
    const std::size_t layer = a.layer_of_parameter(k);
    const Index d = dim_for_qubits(a.n_qubits());
    Matrix base = Matrix::Identity(d, d);
    apply_layers(base, a, 0, layer);
    const double theta = a.parameter(k);
    auto finish = [&](double value) {
        Matrix m = base;
        ParametrizedLayer shifted = a.parametrized(k);
        shifted.theta = value;
        apply_layer(m, a.n_qubits(), shifted);
        apply_layers(m, a, layer + 1, a.layers().size());
        return Operator::unchecked(std::move(m), OperatorKind::unitary);
    };
    return {finish(theta + shift), finish(theta - shift)};
}

// --------------------------------------------------------------- gradients

bool has_half_spectrum(const LayeredAnsatz &a, std::size_t k) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a.parametrized(k).generator.matrix(),
                                              Eigen::EigenvaluesOnly);
    for (Index i = 0; i < eig.eigenvalues().size(); ++i) {
        if (std::abs(std::abs(eig.eigenvalues()[i]) - 0.5) > 1e-10) {
            return false;
        }
    }
    return true;
}

GradientEstimate shift_rule_gradient(const LayeredAnsatz &a, std::size_t k,
                                     const CostFunction &cost) {
    if (!has_half_spectrum(a, k)) {
        throw InvariantError("shift rule needs a generator with spectrum {+1/2, -1/2}; "
                             "use finite_difference_gradient");
    }
    const ShiftedPair pair = shifted_unitaries(a, k, std::numbers::pi / 2.0);
    return {shift_rule_value(pair, cost), GradientMethod::shift_rule, 0.0};
}

GradientEstimate finite_difference_gradient(const LayeredAnsatz &a, std::size_t k,
                                            const CostFunction &cost, double h) {
    if (!(h > 0.0)) {
        throw InvariantError("finite-difference step must be positive");
    }
    const ShiftedPair pair = shifted_unitaries(a, k, h);
    const double value = (cost(pair.plus) - cost(pair.minus)) / (2.0 * h);
    return {value, GradientMethod::finite_difference, h};
}

double quantum_variance_of_generator(const LayeredAnsatz &a, std::size_t k,
                                     const StateVector &psi) {
    if (psi.n_qubits() != a.n_qubits()) {
        throw DimensionError("state width differs from ansatz");
    }
    Matrix chi = psi.amplitudes();
    apply_layers(chi, a, 0, a.layer_of_parameter(k) + 1);
    const Matrix g_chi = apply_generator(a, k, chi);
    return variance_in(chi.col(0), g_chi.col(0));
}

double output_state_variance(const LayeredAnsatz &a, std::size_t k,
                             const StateVector &psi) {
    if (psi.n_qubits() != a.n_qubits()) {
        throw DimensionError("state width differs from ansatz");
    }
    const Matrix u_left = left_unitary(a, k).matrix();
    const Matrix j = u_left * a.generator(k).matrix() * u_left.adjoint();
    const Vector out = ansatz_unitary(a).matrix() * psi.amplitudes();
    return variance_in(out, j * out);
}

double thm1_prefactor(const Operator &h) {
    if (h.kind() != OperatorKind::hermitian && hermiticity_defect(h.matrix()) > 1e-10) {
        throw InvariantError("observable is not hermitian");
    }
    const double d = static_cast<double>(h.dim());
    const double tr_h2 = h.matrix().squaredNorm();
    const double tr_h = h.trace().real();
    return 2.0 * tr_h2 / (d * d - 1.0) - 2.0 * tr_h * tr_h / (d * (d * d - 1.0));
}

double thm1_variance(const Operator &h, const LayeredAnsatz &a, std::size_t k,
                     const StateVector &psi) {
    if (h.dim() != dim_for_qubits(a.n_qubits())) {
        throw DimensionError("observable and ansatz widths differ");
    }
    return thm1_prefactor(h) * quantum_variance_of_generator(a, k, psi);
}

double corollary_bound(const Operator &h, const Operator &g_k) {
    const double g_norm = max_abs_eigenvalue(g_k);
    return thm1_prefactor(h) * g_norm * g_norm;
}

double thm3_variance(const std::vector<FactorizedGenTerm> &terms,
                     const LayeredAnsatz &a, std::size_t k, int n_system) {
    const auto prop = propagate(terms, a, k, n_system);
    const Index d_s = dim_for_qubits(n_system);
    const cplx minus_i{0.0, -1.0};
    std::vector<Matrix> marginals;
    for (const auto &t : prop) {
        marginals.push_back(minus_i * (trace_out_dilation(t.ja, t.a, d_s) -
                                       trace_out_dilation(t.a, t.ja, d_s)));
    }
    const double d = static_cast<double>(d_s);
    double total = 0.0;
    for (std::size_t l = 0; l < terms.size(); ++l) {
        for (std::size_t m = 0; m < terms.size(); ++m) {
            const double weight = terms[l].p_tilde * terms[l].w * terms[m].p_tilde * terms[m].w;
            if (weight == 0.0) {
                continue;
            }
            const double overlap =
                marginals[l].cwiseProduct(marginals[m].transpose()).sum().real();
            total += weight * pair_coefficient(terms[l].h_s, terms[m].h_s, d) * overlap;
        }
    }
    return total;
}

double thm3_variance_full_trace(const std::vector<FactorizedGenTerm> &terms,
                                const LayeredAnsatz &a, std::size_t k,
                                int n_system) {
    const auto prop = propagate(terms, a, k, n_system);
    const double d = static_cast<double>(dim_for_qubits(n_system));
    cplx total{};
    for (std::size_t l = 0; l < terms.size(); ++l) {
        for (std::size_t m = 0; m < terms.size(); ++m) {
            const double weight = terms[l].p_tilde * terms[l].w * terms[m].p_tilde * terms[m].w;
            // chi = |a_l><a_m|: Tr chi = <a_m|a_l>, Tr chi J = <a_m|J|a_l>.
            const cplx tr_chi = prop[m].a.dot(prop[l].a);
            const cplx tr_chi_j = prop[m].a.dot(prop[l].ja);
            const cplx tr_chi_j2 = prop[m].ja.dot(prop[l].ja);
            const cplx var = tr_chi_j2 * tr_chi - tr_chi_j * tr_chi_j;
            total += weight * 2.0 * pair_coefficient(terms[l].h_s, terms[m].h_s, d) * var;
        }
    }
    return total.real();
}

double thm3_upper_bound(const std::vector<FactorizedGenTerm> &terms,
                        const LayeredAnsatz &a, std::size_t k, int n_system) {
    validate_factorized_terms(terms, n_system, a.n_qubits() - n_system);
    double w_max = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;
    for (const auto &l : terms) {
        w_max = std::max(w_max, std::abs(l.w));
        for (const auto &m : terms) {
            x_max = std::max(x_max, std::abs(l.h_s.matrix()
                                                 .cwiseProduct(m.h_s.matrix().transpose())
                                                 .sum()));
            y_max = std::max(y_max, std::abs(l.h_s.trace()) * std::abs(m.h_s.trace()));
        }
    }
    const double d = static_cast<double>(dim_for_qubits(n_system));
    const double g = max_abs_eigenvalue(a.parametrized(k).generator);
    return w_max * w_max *
           (2.0 * x_max / (d * d - 1.0) + 2.0 * y_max / (d * (d * d - 1.0))) * g * g;
}

} // namespace plateau
