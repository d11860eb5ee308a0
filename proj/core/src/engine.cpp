#include "qzeno/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace qzeno {

namespace {

constexpr double kRegimeBand = 1e-9;
constexpr double kMinDiffStep = 1e-12;

// Belief-controlled ancilla flip: orthogonal pointer states |0_a>, |1_a>.
ComplexMatrix dephasing_unitary() {
  ComplexMatrix u(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

// Rotation on the belief qubit, the most significant factor of a raw
// amplitude vector.
void rotate_belief(std::vector<complexd>& v, const ComplexMatrix& u2) {
  const std::size_t half = v.size() / 2;
  for (std::size_t r = 0; r < half; ++r) {
    const complexd x0 = v[r];
    const complexd x1 = v[r + half];
    v[r] = u2(0, 0) * x0 + u2(0, 1) * x1;
    v[r + half] = u2(1, 0) * x0 + u2(1, 1) * x1;
  }
}

// Interaction on (belief, newest ancilla) = (most significant, least
// significant) factors; the 4x4 matrix basis index is 2*belief + ancilla.
void couple_newest_ancilla(std::vector<complexd>& v, const ComplexMatrix& u4) {
  const std::size_t half = v.size() / 2;
  for (std::size_t m = 0; m < half / 2; ++m) {
    const std::size_t idx[4] = {2 * m, 2 * m + 1, 2 * m + half, 2 * m + half + 1};
    complexd x[4];
    for (int k = 0; k < 4; ++k) x[k] = v[idx[k]];
    for (int j = 0; j < 4; ++j) {
      complexd acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += u4(j, k) * x[k];
      v[idx[j]] = acc;
    }
  }
}

DensityOperator reduced_belief(const std::vector<complexd>& v) {
  const StateVector psi(v);
  const std::array<std::size_t, 2> dims = {2, v.size() / 2};
  return partial_trace(psi, 0, dims);
}

double survival_of(const std::vector<complexd>& v) {
  const std::size_t half = v.size() / 2;
  double p = 0.0;
  for (std::size_t r = 0; r < half; ++r) p += std::norm(v[r]);
  return std::clamp(p, 0.0, 1.0);
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

// rho_b -> tr_a[ U (rho_b x |0_a><0_a|) U^dag ]
DensityOperator channel_step(const ComplexMatrix& rho, const ComplexMatrix& u4) {
  ComplexMatrix fresh(2, 2);
  fresh(0, 0) = 1.0;
  const DensityOperator joint(conjugate(u4, kron(rho, fresh)));
  const std::array<std::size_t, 2> dims = {2, 2};
  return partial_trace(joint, 0, dims);
}

StateVector mid_interaction_state(const ExperimentSpec& spec) {
  const ComplexMatrix u1 = kron(u_free(spec.b_first), ComplexMatrix::identity(2));
  const ComplexMatrix ui = interaction_unitary(spec.params, spec.interaction);
  return apply(ui, apply(u1, StateVector::basis(4, 0)));
}

double survival4(const StateVector& psi) {
  return std::clamp(std::norm(psi[0]) + std::norm(psi[1]), 0.0, 1.0);
}

}  // namespace

void ExperimentSpec::validate() const {
  params.validate();
  if (!(b_first.radians >= 0.0) || !(b_first.radians <= b_total.radians)) {
    throw ValidationError("b_first must satisfy 0 <= b_first <= b_total");
  }
  if (grid_points < 2) throw ValidationError("grid_points must be >= 2");
  if (n_interactions < 0) throw ValidationError("n_interactions must be >= 0");
  if (max_qubits < 1) throw ValidationError("max_qubits must be >= 1");
}

ComplexMatrix interaction_unitary(const ModelParams& p, InteractionKind kind) {
  p.validate();
  if (kind == InteractionKind::ideal_dephasing) return dephasing_unitary();
  return matexp_hermitian(h_total(p), p.t_prime);
}

StateVector evolve_single_interaction(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.n_interactions != 1) {
    throw ValidationError("evolve_single_interaction: n_interactions must be 1");
  }
  const StateVector mid = mid_interaction_state(spec);
  const RotationAngle rest{spec.b_total.radians - spec.b_first.radians};
  return apply(kron(u_free(rest), ComplexMatrix::identity(2)), mid);
}

double prob_innocent_free(RotationAngle b_total) {
  const double c = std::cos(b_total.radians);
  return c * c;
}

double prob_innocent_with_interaction(const ExperimentSpec& spec) {
  return survival4(evolve_single_interaction(spec));
}

double transition_rate_analytic(RotationAngle b_first, double overlap) {
  return -2.0 * std::cos(b_first.radians) * std::sin(b_first.radians) * overlap;
}

double transition_rate_numeric(const ExperimentSpec& spec, double h) {
  spec.validate();
  if (!(h >= kMinDiffStep)) {
    throw ValidationError("transition_rate_numeric: step h underflows 1e-12");
  }
  if (spec.n_interactions > 1) {
    throw ValidationError("transition_rate_numeric: at most one interaction");
  }

  // Survival as a function of the rotation continued past the interaction
  // point (past b_first for the free case).
  std::vector<complexd> mid;
  if (spec.n_interactions == 1) {
    const StateVector mid_state = mid_interaction_state(spec);
    const auto amps = mid_state.amplitudes();
    mid.assign(amps.begin(), amps.end());
  } else {
    mid = {complexd{1.0, 0.0}, complexd{0.0, 0.0}};
    rotate_belief(mid, u_free(spec.b_first));
  }
  auto survival_at = [&](double d) {
    std::vector<complexd> v = mid;
    rotate_belief(v, u_free(RotationAngle{d}));
    return survival_of(v);
  };

  const double x = spec.b_total.radians - spec.b_first.radians;
  if (x < h) {
    // the rotation cannot go negative: second-order one-sided stencil
    return (-3.0 * survival_at(x) + 4.0 * survival_at(x + h) - survival_at(x + 2.0 * h)) /
           (2.0 * h);
  }
  return (survival_at(x + h) - survival_at(x - h)) / (2.0 * h);
}

ZenoRegime regime_classify(double overlap) {
  if (!(overlap >= -1.0 - kRegimeBand) || !(overlap <= 1.0 + kRegimeBand)) {
    throw ValidationError("regime_classify: overlap outside [-1, 1]");
  }
  if (overlap >= 1.0 - kRegimeBand) return ZenoRegime::no_effect;
  if (std::abs(overlap) <= kRegimeBand) return ZenoRegime::frozen;
  return overlap > 0.0 ? ZenoRegime::partial_zeno : ZenoRegime::enhancement;
}

ZenoResult zeno_sequence(const ExperimentSpec& spec) {
  return zeno_sequence(spec, ZenoStepOverrides{});
}

ZenoResult zeno_sequence(const ExperimentSpec& spec, const ZenoStepOverrides& overrides) {
  spec.validate();
  const int n = spec.n_interactions;
  const std::size_t steps = static_cast<std::size_t>(n) + 1;
  if (!overrides.angles.empty() && overrides.angles.size() != steps) {
    throw ValidationError("zeno_sequence: angle override needs n_interactions + 1 entries");
  }
  if (!overrides.step_params.empty() &&
      overrides.step_params.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("zeno_sequence: step_params override needs n_interactions entries");
  }
  for (const auto& p : overrides.step_params) p.validate();

  const double equal_angle = spec.b_total.radians / static_cast<double>(steps);
  auto angle_of = [&](std::size_t k) {
    return overrides.angles.empty() ? RotationAngle{equal_angle} : overrides.angles[k];
  };

  const bool shared_interaction = overrides.step_params.empty();
  ComplexMatrix shared_u(1, 1);
  if (n > 0 && shared_interaction) shared_u = interaction_unitary(spec.params, spec.interaction);
  auto interaction_of = [&](std::size_t k) -> ComplexMatrix {
    if (shared_interaction) return shared_u;
    return interaction_unitary(overrides.step_params[k], spec.interaction);
  };

  std::vector<double> entropy_trace;
  entropy_trace.reserve(static_cast<std::size_t>(n));

  if (spec.mode == EvolutionMode::pure_state) {
    if (n + 1 > spec.max_qubits || static_cast<std::size_t>(n) >= 63 ||
        (std::size_t{1} << (n + 1)) > kMaxDimension) {
      throw SizingError("zeno_sequence: pure_state mode needs " + std::to_string(n + 1) +
                        " qubits, cap is " +
                        std::to_string(std::min<std::size_t>(spec.max_qubits, 21)));
    }
    std::vector<complexd> v = {complexd{1.0, 0.0}, complexd{0.0, 0.0}};
    for (std::size_t k = 0; k < steps; ++k) {
      rotate_belief(v, u_free(angle_of(k)));
      if (k + 1 < steps) {
        std::vector<complexd> grown(2 * v.size(), complexd{0.0, 0.0});
        for (std::size_t i = 0; i < v.size(); ++i) grown[2 * i] = v[i];
        v = std::move(grown);
        couple_newest_ancilla(v, interaction_of(k));
        entropy_trace.push_back(von_neumann_entropy(reduced_belief(v)));
      }
    }
    DensityOperator final_belief = reduced_belief(v);
    return ZenoResult{n, survival_of(v), std::move(entropy_trace), spec.mode,
                      std::move(final_belief)};
  }

  ComplexMatrix rho(2, 2);
  rho(0, 0) = 1.0;
  for (std::size_t k = 0; k < steps; ++k) {
    rho = conjugate(u_free(angle_of(k)), rho);
    if (k + 1 < steps) {
      const DensityOperator reduced = channel_step(rho, interaction_of(k));
      entropy_trace.push_back(von_neumann_entropy(reduced));
      rho = reduced.matrix();
    }
  }
  DensityOperator final_belief{std::move(rho)};
  const double survival = std::clamp(final_belief.matrix()(0, 0).real(), 0.0, 1.0);
  return ZenoResult{n, survival, std::move(entropy_trace), spec.mode, std::move(final_belief)};
}

double projective_baseline(int n, RotationAngle b_total, bool post_select) {
  if (n < 0) throw ValidationError("projective_baseline: n must be >= 0");
  const double theta = b_total.radians / static_cast<double>(n + 1);
  const double c2 = std::cos(theta) * std::cos(theta);
  if (post_select) return std::pow(c2, n + 1);
  const double s2 = std::sin(theta) * std::sin(theta);
  double p = 1.0;
  for (int k = 0; k <= n; ++k) p = p * c2 + (1.0 - p) * s2;
  return std::clamp(p, 0.0, 1.0);
}

std::vector<CurveSample> curve_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const double b1 = spec.b_first.radians;
  const double bt = spec.b_total.radians;
  const double coincide = 1e-12 * std::max(1.0, std::abs(bt));
  const StateVector mid = mid_interaction_state(spec);

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(spec.grid_points));
  const double step = bt / static_cast<double>(spec.grid_points - 1);
  for (int k = 0; k < spec.grid_points; ++k) {
    const double b = (k + 1 == spec.grid_points) ? bt : static_cast<double>(k) * step;
    if (std::abs(b - b1) <= coincide) continue;  // the boundary pair covers it
    grid.push_back(b);
  }

  auto with_interaction_at = [&](double b) {
    const RotationAngle rest{b - b1};
    const StateVector psi = apply(kron(u_free(rest), ComplexMatrix::identity(2)), mid);
    return survival4(psi);
  };

  std::vector<CurveSample> samples;
  samples.reserve(grid.size() + 2);
  const double p_boundary_free = prob_innocent_free(spec.b_first);
  for (double b : grid) {
    if (b > b1) break;
    const double p = prob_innocent_free(RotationAngle{b});
    samples.push_back(CurveSample{b, p, p, CurvePhase::pre_interaction});
  }
  samples.push_back(
      CurveSample{b1, p_boundary_free, p_boundary_free, CurvePhase::pre_interaction});
  samples.push_back(CurveSample{b1, p_boundary_free, survival4(mid),
                                CurvePhase::post_interaction_boundary});
  for (double b : grid) {
    if (b <= b1) continue;
    samples.push_back(CurveSample{b, prob_innocent_free(RotationAngle{b}),
                                  with_interaction_at(b), CurvePhase::post_interaction});
  }
  return samples;
}

double entanglement_at_interaction(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.n_interactions != 1) {
    throw ValidationError("entanglement_at_interaction: n_interactions must be 1");
  }
  const StateVector mid = mid_interaction_state(spec);
  const std::array<std::size_t, 2> dims = {2, 2};
  return von_neumann_entropy(partial_trace(mid, 0, dims));
}

}  // namespace qzeno
