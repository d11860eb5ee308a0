#pragma once

#include <cstddef>
#include <vector>

#include "qzeno/linalg.hpp"
#include "qzeno/model.hpp"

namespace qzeno {

enum class EvolutionMode { pure_state, channel };

/// The interaction coupling belief to a fresh intention ancilla: the
/// belief-action generator, or an ideal dephasing coupling (belief-controlled
/// ancilla flip, orthogonal pointer states) used as the perfect-measurement
/// limit in tests.
enum class InteractionKind { bae, ideal_dephasing };

enum class CurvePhase { pre_interaction, post_interaction_boundary, post_interaction };

/// Zeno regimes by pointer overlap r = Re<nu|eta>, with a 1e-9 band around
/// the thresholds: r = 1 no effect, 0 < r < 1 partial slowdown, r = 0 frozen,
/// r < 0 the transition reverses.
enum class ZenoRegime { no_effect, partial_zeno, frozen, enhancement };

struct ExperimentSpec {
  ModelParams params;
  RotationAngle b_first;           // rotation before the (first) interaction
  RotationAngle b_total;           // total rotation across the experiment
  int grid_points = 400;
  int n_interactions = 1;
  EvolutionMode mode = EvolutionMode::pure_state;
  InteractionKind interaction = InteractionKind::bae;
  int max_qubits = 21;             // pure-state cap: belief + (max_qubits - 1) ancillas

  void validate() const;  // throws ValidationError naming the offending field
};

/// One point of a probability-vs-B curve. Before the interaction the two
/// probabilities coincide; the boundary sample pair makes a discontinuity at
/// b_first representable.
struct CurveSample {
  double b = 0.0;
  double p_free = 0.0;
  double p_interaction = 0.0;
  CurvePhase phase = CurvePhase::pre_interaction;
};

struct ZenoResult {
  int n = 0;
  double survival = 0.0;
  std::vector<double> entropy_trace;  // belief entropy after each interaction, nats
  EvolutionMode mode = EvolutionMode::pure_state;
  DensityOperator final_belief;       // reduced belief state after the last rotation
};

/// Optional per-step overrides for a Zeno sequence: explicit rotation angles
/// (n+1 entries) instead of the equal split, and/or per-interaction model
/// parameters (n entries) instead of the shared ones.
struct ZenoStepOverrides {
  std::vector<RotationAngle> angles;
  std::vector<ModelParams> step_params;
};

/// The 4x4 unitary coupling belief to one ancilla.
ComplexMatrix interaction_unitary(const ModelParams& p, InteractionKind kind);

/// Three-leg evolution (rotation, interaction, rotation) of |0_b,0_a>;
/// requires n_interactions == 1.
StateVector evolve_single_interaction(const ExperimentSpec& spec);

/// cos^2(b_total): the three-term free-evolution expansion collapses to this
/// for every split of the total angle.
double prob_innocent_free(RotationAngle b_total);

/// Probability of finding the belief still in |0_b> after the three-leg
/// evolution with one interaction at b_first.
double prob_innocent_with_interaction(const ExperimentSpec& spec);

/// -2 cos(b) sin(b) * overlap: transition rate immediately after the
/// interaction; overlap = 1 recovers the free rate.
double transition_rate_analytic(RotationAngle b_first, double overlap);

/// Finite-difference transition rate of the survival curve with respect to
/// the post-interaction rotation, evaluated at b_total - b_first. Uses a
/// second-order one-sided stencil at the boundary (the rotation cannot go
/// negative) and a central stencil elsewhere. h below 1e-12 is rejected.
double transition_rate_numeric(const ExperimentSpec& spec, double h);

ZenoRegime regime_classify(double overlap);

/// Splits b_total into n+1 equal rotations with an interaction with a fresh
/// |0_a> ancilla after each of the first n. pure_state mode keeps the joint
/// state (dimension 2^(n+1), capped); channel mode traces each ancilla out
/// immediately, which is exact because no ancilla is ever revisited.
ZenoResult zeno_sequence(const ExperimentSpec& spec);
ZenoResult zeno_sequence(const ExperimentSpec& spec, const ZenoStepOverrides& overrides);

/// Collapse-style contrast: n intermediate projective measurements of the
/// belief across a total rotation b_total. Unread measurements follow the
/// two-state Markov chain with step transition cos^2/sin^2 of the step angle;
/// post-selection keeps the |0_b> outcome every time.
double projective_baseline(int n, RotationAngle b_total, bool post_select);

/// Samples the free and with-interaction survival curves on a uniform grid
/// over [0, b_total], emitting a pre/boundary sample pair at b_first.
std::vector<CurveSample> curve_sweep(const ExperimentSpec& spec);

/// von Neumann entropy of the reduced belief state immediately after the
/// interaction, in nats.
double entanglement_at_interaction(const ExperimentSpec& spec);

}  // namespace qzeno
