#pragma once

#include <cstddef>
#include <vector>

#include "qzeno/linalg.hpp"

namespace qzeno {

/// Rotation angle in radians; finite, no range restriction (periodic semantics).
struct RotationAngle {
  double radians = 0.0;

  RotationAngle() = default;
  explicit RotationAngle(double r);
};

/// Scalar knobs of the belief-action model: utility parameters mu0/mu1,
/// dissonance coupling gamma, interaction duration t_prime (dimensionless
/// phase; the interaction generators have unit-magnitude block eigenvalues,
/// so t_prime = pi/2 is a quarter period).
struct ModelParams {
  double mu0 = 0.0;
  double mu1 = 0.0;
  double gamma = 0.0;
  double t_prime = 0.0;

  void validate() const;  // throws ValidationError naming the offending field
};

/// Parameters of the evidence-strength displacement sum.
struct EvidenceSchedule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> strengths;  // a_j, consumed 1-based by angular_displacement
};

/// alpha = 0.2, beta = 0, a_j = 1: one evidence step rotates the belief by 0.2.
EvidenceSchedule demo_schedule(std::size_t evidence_count);

/// exp(-i sigma_x b) = cos(b) I - i sin(b) sigma_x, built in closed form.
ComplexMatrix u_free(RotationAngle b);

/// alpha * sum_{j=m+1..n} a_j exp(-beta (j-m-1)^2); the empty sum (m = n) is 0.
RotationAngle angular_displacement(const EvidenceSchedule& s, std::size_t m, std::size_t n);

/// Utility-driven interaction generator, block-diagonal over the belief index:
/// belief-b block is (1/sqrt(1+mu_b^2)) [[mu_b, 1], [1, -mu_b]] on the ancilla.
/// Basis order is |belief, ancilla> with index 2*belief + ancilla.
ComplexMatrix h_alpha(double mu0, double mu1);

/// Dissonance generator; couples the belief sectors, so it moves belief
/// populations during the interaction.
ComplexMatrix h_beta(double gamma);

/// h_alpha(mu0, mu1) + h_beta(gamma).
ComplexMatrix h_total(const ModelParams& p);

struct PointerStates {
  StateVector nu;   // ancilla state correlated with belief 0
  StateVector eta;  // ancilla state correlated with belief 1
};

/// Closed-form pointer states for gamma = 0, with theta_b = arctan(1/mu_b):
///   (e^{-it'} cos^2(theta/2) + e^{it'} sin^2(theta/2)) |0_a>
/// + (e^{-it'} - e^{it'}) cos(theta/2) sin(theta/2) |1_a>.
/// Nonzero gamma has no product form; callers must use matexp_hermitian then.
PointerStates ancilla_states_closed_form(const ModelParams& p);

/// Re<nu|eta>, clamped to [-1, 1].
double overlap_re(const StateVector& nu, const StateVector& eta);

}  // namespace qzeno
