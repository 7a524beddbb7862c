#pragma once

#include <cstddef>
#include <vector>

#include "ontolab/hilbert.hpp"

namespace ontolab {

/// Hidden variables of the delta-density model: two real vectors carrying
/// the real and imaginary parts of a state's amplitudes.
struct AmplitudeHiddenVariables {
    std::vector<double> lambda;
    std::vector<double> mu;

    std::size_t dim() const { return lambda.size(); }
    Complex component(std::size_t k) const { return {lambda[k], mu[k]}; }
};

/// The point-mass hidden-variable assignment: lambda = Re(psi), mu = Im(psi).
AmplitudeHiddenVariables hv_of_state(const StateVector& psi);

/// |sum_k <xi|U|k> (lambda_k + i mu_k)|^2. Takes no quantum state argument:
/// the response is psi-independent by construction.
double model_response(const StateVector& xi, const UnitaryOperator& u,
                      const AmplitudeHiddenVariables& hv);

/// Composite hidden variables for two subsystems, row-major over (n,p):
/// lambda_{np} + i mu_{np} = (lambda1_n + i mu1_n)(lambda2_p + i mu2_p).
AmplitudeHiddenVariables compose(const AmplitudeHiddenVariables& hv1,
                                 const AmplitudeHiddenVariables& hv2);

struct FactorizationReport {
    bool exact = false;            // bitwise equality of the two assignments
    double max_deviation = 0.0;    // max abs difference over lambda and mu
};

/// Confirms the joint point mass of a product state equals the composition
/// of the marginal point masses: hv(psi1 x psi2) vs compose(hv(psi1), hv(psi2)).
FactorizationReport verify_factorization(const StateVector& psi1, const StateVector& psi2);

}  // namespace ontolab
