#include "sympcalc/hodge.hpp"

#include <cmath>
#include <string>

namespace sympcalc {

double l2_norm(const HarmonicForm& h) {
    return kTwoPi * std::hypot(h.c1, h.c2);
}

OneFormField as_form(const HarmonicForm& h, GridSpec g) {
    return {ScalarField(g, h.c1), ScalarField(g, h.c2)};
}

bool is_closed(const OneFormField& alpha, double tol) {
    return field_sup_abs(exterior_derivative(alpha)) <= tol;
}

SplitForm split(const OneFormField& alpha, double tol, const SectionConfig& section) {
    double d_sup = field_sup_abs(exterior_derivative(alpha));
    if (d_sup > tol)
        throw NotClosed("form is not closed: sup|d(alpha)| = " + std::to_string(d_sup));

    SplitForm s;
    s.harmonic = {field_mean(alpha.a1), field_mean(alpha.a2)};

    // The exact part dF has divergence Laplace(F); the constant class part
    // drops out of the divergence, so the right-hand side is just div(alpha).
    ScalarField rhs = spectral_gradient(alpha.a1).a1 + spectral_gradient(alpha.a2).a2;
    s.potential = poisson_solve(rhs);
    recenter(s.potential);

    if (section.offset1)
        s.potential = s.potential - s.harmonic.c1 * (*section.offset1);
    if (section.offset2)
        s.potential = s.potential - s.harmonic.c2 * (*section.offset2);

    OneFormField rebuilt = reconstruct(s, alpha.grid(), section);
    double resid = std::max(field_sup_abs(rebuilt.a1 - alpha.a1),
                            field_sup_abs(rebuilt.a2 - alpha.a2));
    if (resid > std::max(tol, 1e-12))
        throw ResidualTooLarge("split reconstruction residual " + std::to_string(resid));
    return s;
}

OneFormField reconstruct(const SplitForm& s, GridSpec g, const SectionConfig& section) {
    if (s.potential.grid != g) throw ShapeMismatch("potential grid differs from target grid");
    OneFormField out = spectral_gradient(s.potential);
    for (std::size_t i = 0; i < out.a1.values.size(); ++i) {
        out.a1.values[i] += s.harmonic.c1;
        out.a2.values[i] += s.harmonic.c2;
    }
    if (section.offset1) {
        OneFormField d1 = spectral_gradient(*section.offset1);
        out = out + s.harmonic.c1 * d1;
    }
    if (section.offset2) {
        OneFormField d2 = spectral_gradient(*section.offset2);
        out = out + s.harmonic.c2 * d2;
    }
    return out;
}

} // namespace sympcalc
