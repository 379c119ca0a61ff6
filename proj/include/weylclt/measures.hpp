#ifndef WEYLCLT_MEASURES_HPP
#define WEYLCLT_MEASURES_HPP

#include <vector>

#include "weylclt/fock.hpp"
#include "weylclt/phase_space.hpp"

namespace weylclt {

/// A finite atomic measure on the real line, atoms sorted by value.
struct DiscreteMeasure {
  struct Atom {
    double value;
    double weight;  // >= 0
  };

  std::vector<Atom> atoms;

  double total_weight() const;
};

/// The distribution of the observable R(z) in state T: diagonalize
/// R(z) = sum_i lambda_i |v_i><v_i| and collect atoms
/// (lambda_i, <v_i|T|v_i>), merging eigenvalues that agree to a relative
/// 1e-9 (R(z) has exact degeneracies on symmetry axes). z = 0 gives the
/// Dirac measure at 0.
DiscreteMeasure spectral_measure(const ProbabilityOperator& state, const PhaseVector& z);

double mean(const DiscreteMeasure& mu);
double second_moment(const DiscreteMeasure& mu);
/// second_moment - mean^2, clamped at 0; values below -1e-12 throw.
double variance(const DiscreteMeasure& mu);

/// The vector m with mean of R(z) equal to <m, z>, read off at the basis
/// vectors. Linearity is re-verified on pseudo-random z; failure throws and
/// signals an over-aggressive truncation.
PhaseVector mean_vector(const ProbabilityOperator& state);

/// Splits z into its per-mode components: the k-th result keeps only
/// (x_k, y_k) and is zero elsewhere. They sum to z.
std::vector<PhaseVector> component_decomposition(const PhaseVector& z);

struct CommutingFamilyReport {
  double max_commutator;       // max-norm over pairs [R(z_j), R(z_k)], exactly 0
  double additivity_residual;  // max-norm of R(z) - sum_k R(z_k)
};

/// The component observables R(z_k) act on distinct tensor factors, so they
/// commute exactly (not merely to rounding) and sum to R(z).
CommutingFamilyReport commuting_family_check(const FockSpaceSpec& spec, const PhaseVector& z);

struct MomentInequalityResult {
  double lhs;  // m2 of the measure along z
  double rhs;  // d * sum_k m2 along the mode components
  bool pass;   // lhs <= rhs + 1e-8 (1 + rhs)
};

/// Second-moment decomposition bound over the component planes:
/// m2(mu_z) <= d * sum_k m2(mu_{z_k}).
MomentInequalityResult moment_inequality_check(const ProbabilityOperator& state,
                                               const PhaseVector& z);

}  // namespace weylclt

#endif  // WEYLCLT_MEASURES_HPP
