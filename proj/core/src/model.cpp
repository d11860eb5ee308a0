#include "qzeno/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qzeno {

RotationAngle::RotationAngle(double r) : radians(r) {
  if (!std::isfinite(r)) throw ValidationError("RotationAngle: angle must be finite");
}

void ModelParams::validate() const {
  if (!std::isfinite(mu0)) throw ValidationError("mu0 must be finite");
  if (!std::isfinite(mu1)) throw ValidationError("mu1 must be finite");
  if (!std::isfinite(gamma)) throw ValidationError("gamma must be finite");
  if (!std::isfinite(t_prime) || t_prime < 0.0) {
    throw ValidationError("t_prime must be finite and >= 0");
  }
}

EvidenceSchedule demo_schedule(std::size_t evidence_count) {
  EvidenceSchedule s;
  s.alpha = 0.2;
  s.beta = 0.0;
  s.strengths.assign(evidence_count, 1.0);
  return s;
}

ComplexMatrix u_free(RotationAngle b) {
  const double c = std::cos(b.radians);
  const double s = std::sin(b.radians);
  return ComplexMatrix::from_rows({{complexd{c, 0.0}, complexd{0.0, -s}},
                                   {complexd{0.0, -s}, complexd{c, 0.0}}});
}

RotationAngle angular_displacement(const EvidenceSchedule& s, std::size_t m, std::size_t n) {
  if (m > n || n > s.strengths.size()) {
    throw ValidationError("angular_displacement: require 0 <= m <= n <= evidence count " +
                          std::to_string(s.strengths.size()));
  }
  double sum = 0.0;
  for (std::size_t j = m + 1; j <= n; ++j) {
    const double k = static_cast<double>(j - m - 1);
    sum += s.strengths[j - 1] * std::exp(-s.beta * k * k);
  }
  return RotationAngle(s.alpha * sum);
}

ComplexMatrix h_alpha(double mu0, double mu1) {
  const double n0 = std::sqrt(1.0 + mu0 * mu0);
  const double n1 = std::sqrt(1.0 + mu1 * mu1);
  ComplexMatrix h(4, 4);
  h(0, 0) = mu0 / n0;
  h(0, 1) = 1.0 / n0;
  h(1, 0) = 1.0 / n0;
  h(1, 1) = -mu0 / n0;
  h(2, 2) = mu1 / n1;
  h(2, 3) = 1.0 / n1;
  h(3, 2) = 1.0 / n1;
  h(3, 3) = -mu1 / n1;
  return h;
}

ComplexMatrix h_beta(double gamma) {
  const double g = gamma / std::sqrt(2.0);
  ComplexMatrix h(4, 4);
  h(0, 0) = -g;
  h(0, 2) = -g;
  h(2, 0) = -g;
  h(1, 3) = -g;
  h(3, 1) = -g;
  h(3, 3) = -g;
  h(1, 1) = g;
  h(2, 2) = g;
  return h;
}

ComplexMatrix h_total(const ModelParams& p) { return h_alpha(p.mu0, p.mu1) + h_beta(p.gamma); }

namespace {

StateVector pointer_state(double mu, double t) {
  // theta = arctan(1/mu) via atan2 so mu = 0 lands on theta = pi/2
  const double theta = std::atan2(1.0, mu);
  const double ch = std::cos(theta / 2.0);
  const double sh = std::sin(theta / 2.0);
  const complexd em = std::exp(complexd{0.0, -t});
  const complexd ep = std::exp(complexd{0.0, t});
  return StateVector({em * ch * ch + ep * sh * sh, (em - ep) * ch * sh});
}

}  // namespace

PointerStates ancilla_states_closed_form(const ModelParams& p) {
  p.validate();
  if (p.gamma != 0.0) {
    throw ValidationError(
        "ancilla_states_closed_form: valid only for gamma = 0; "
        "use matexp_hermitian(h_total(p), t_prime) for the full dynamics");
  }
  return PointerStates{pointer_state(p.mu0, p.t_prime), pointer_state(p.mu1, p.t_prime)};
}

double overlap_re(const StateVector& nu, const StateVector& eta) {
  const double r = inner_product(nu, eta).real();
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace qzeno
