#include "ontolab/explicit_model.hpp"

#include <cmath>
#include <stdexcept>

namespace ontolab {

AmplitudeHiddenVariables hv_of_state(const StateVector& psi) {
    AmplitudeHiddenVariables hv;
    hv.lambda.reserve(psi.dim());
    hv.mu.reserve(psi.dim());
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        hv.lambda.push_back(psi[k].real());
        hv.mu.push_back(psi[k].imag());
    }
    return hv;
}

double model_response(const StateVector& xi, const UnitaryOperator& u,
                      const AmplitudeHiddenVariables& hv) {
    if (xi.dim() != u.dim() || hv.dim() != u.dim())
        throw std::invalid_argument("model_response: dimension mismatch");
    Complex amp{0.0, 0.0};
    for (std::size_t k = 0; k < u.dim(); ++k) {
        Complex xiUk{0.0, 0.0};  // <xi|U|k>
        for (std::size_t r = 0; r < u.dim(); ++r) xiUk += std::conj(xi[r]) * u.at(r, k);
        amp += xiUk * hv.component(k);
    }
    return std::norm(amp);
}

AmplitudeHiddenVariables compose(const AmplitudeHiddenVariables& hv1,
                                 const AmplitudeHiddenVariables& hv2) {
    AmplitudeHiddenVariables out;
    out.lambda.resize(hv1.dim() * hv2.dim());
    out.mu.resize(hv1.dim() * hv2.dim());
    for (std::size_t n = 0; n < hv1.dim(); ++n) {
        for (std::size_t p = 0; p < hv2.dim(); ++p) {
            const Complex z = hv1.component(n) * hv2.component(p);
            out.lambda[n * hv2.dim() + p] = z.real();
            out.mu[n * hv2.dim() + p] = z.imag();
        }
    }
    return out;
}

FactorizationReport verify_factorization(const StateVector& psi1, const StateVector& psi2) {
    const auto joint = hv_of_state(tensor_product(psi1, psi2));
    const auto composed = compose(hv_of_state(psi1), hv_of_state(psi2));

    FactorizationReport rep;
    rep.exact = true;
    for (std::size_t k = 0; k < joint.dim(); ++k) {
        const double dl = std::abs(joint.lambda[k] - composed.lambda[k]);
        const double dm = std::abs(joint.mu[k] - composed.mu[k]);
        if (dl != 0.0 || dm != 0.0) rep.exact = false;
        rep.max_deviation = std::max({rep.max_deviation, dl, dm});
    }
    return rep;
}

}  // namespace ontolab
