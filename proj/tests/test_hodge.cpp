#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sympcalc/hodge.hpp"

using namespace sympcalc;

namespace {
const GridSpec g64(64);

OneFormField random_closed_form(GridSpec g, std::uint64_t seed, double c1, double c2) {
    ScalarField F = random_band_limited(g, seed, 6, 1.0);
    OneFormField dF = spectral_gradient(F);
    for (std::size_t i = 0; i < dF.a1.values.size(); ++i) {
        dF.a1.values[i] += c1;
        dF.a2.values[i] += c2;
    }
    return dF;
}
}

TEST_CASE("harmonic L2 norms") {
    CHECK(l2_norm(HarmonicForm{0, 1}) == doctest::Approx(kTwoPi).epsilon(1e-14));
    CHECK(l2_norm(HarmonicForm{0, 0}) == 0.0);
    CHECK(l2_norm(HarmonicForm{3, 4}) == doctest::Approx(5 * kTwoPi).epsilon(1e-14));

    // Quadrature cross-check of the closed form.
    OneFormField unit = as_form(HarmonicForm{0, 1}, g64);
    CHECK(l2_norm(unit) == doctest::Approx(kTwoPi).epsilon(1e-13));
    OneFormField f34 = as_form(HarmonicForm{3, 4}, g64);
    CHECK(l2_norm(f34) == doctest::Approx(l2_norm(HarmonicForm{3, 4})).epsilon(1e-13));
}

TEST_CASE("closedness predicate") {
    CHECK(is_closed(as_form(HarmonicForm{1, 1}, g64)));
    OneFormField bad{sample_field(g64, [](double, double t2) { return std::sin(t2); }),
                     ScalarField(g64)};
    CHECK_FALSE(is_closed(bad, 1e-6));
    ScalarField F = random_band_limited(g64, 5, 6, 1.0);
    CHECK(is_closed(spectral_gradient(F), 1e-9));
}

TEST_CASE("split separates mean from oscillation") {
    OneFormField alpha{ScalarField(g64, 3.0),
                       sample_field(g64, [](double, double t2) { return std::cos(t2); })};
    SplitForm s = split(alpha);
    CHECK(s.harmonic.c1 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::fabs(s.harmonic.c2) < 1e-14);
    ScalarField expected = sample_field(g64, [](double, double t2) { return std::sin(t2); });
    CHECK(field_sup_abs(s.potential - expected) < 1e-12);
}

TEST_CASE("split of an already harmonic form") {
    SplitForm s = split(as_form(HarmonicForm{0, 1}, g64));
    CHECK(s.harmonic.c1 == 0.0);
    CHECK(s.harmonic.c2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(field_sup_abs(s.potential) < 1e-13);
}

TEST_CASE("split recovers a known potential") {
    ScalarField F = sample_field(g64, [](double t1, double t2) {
        return std::sin(t1) * std::cos(t2);
    });
    SplitForm s = split(spectral_gradient(F));
    CHECK(std::fabs(s.harmonic.c1) < 1e-13);
    CHECK(std::fabs(s.harmonic.c2) < 1e-13);
    CHECK(field_sup_abs(s.potential - F) < 1e-10);
    CHECK(std::fabs(field_mean(s.potential)) < 1e-12);
}

TEST_CASE("split rejects non-closed input") {
    OneFormField bad{sample_field(g64, [](double, double t2) { return std::sin(t2); }),
                     ScalarField(g64)};
    CHECK_THROWS_AS(split(bad, 1e-8), NotClosed);
}

TEST_CASE("split is idempotent and linear on random closed forms") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 8; ++trial) {
        OneFormField a = random_closed_form(g64, 100 + trial, coef(rng), coef(rng));
        OneFormField b = random_closed_form(g64, 200 + trial, coef(rng), coef(rng));
        SplitForm sa = split(a);
        SplitForm sb = split(b);

        // Idempotence: splitting the reconstruction returns the same parts.
        SplitForm again = split(reconstruct(sa, g64));
        CHECK(std::fabs(again.harmonic.c1 - sa.harmonic.c1) < 1e-12);
        CHECK(std::fabs(again.harmonic.c2 - sa.harmonic.c2) < 1e-12);
        CHECK(field_sup_abs(again.potential - sa.potential) < 1e-10);

        // Linearity.
        double x = coef(rng), y = coef(rng);
        SplitForm mix = split(x * a + y * b);
        CHECK(std::fabs(mix.harmonic.c1 - (x * sa.harmonic.c1 + y * sb.harmonic.c1)) < 1e-9);
        CHECK(std::fabs(mix.harmonic.c2 - (x * sa.harmonic.c2 + y * sb.harmonic.c2)) < 1e-9);
        CHECK(field_sup_abs(mix.potential
                            - (x * sa.potential + y * sb.potential)) < 1e-9);

        // Cohomology invariance: adding an exact piece leaves the class.
        ScalarField G = random_band_limited(g64, 300 + trial, 4, 0.7);
        SplitForm shifted = split(a + spectral_gradient(G));
        CHECK(std::fabs(shifted.harmonic.c1 - sa.harmonic.c1) < 1e-13);
        CHECK(std::fabs(shifted.harmonic.c2 - sa.harmonic.c2) < 1e-13);
    }
}

TEST_CASE("section hook shifts the potential consistently") {
    SectionConfig section;
    section.offset1 = random_band_limited(g64, 17, 3, 0.5);
    section.offset2 = random_band_limited(g64, 18, 3, 0.5);

    OneFormField alpha = random_closed_form(g64, 19, 1.5, -0.75);
    SplitForm plain = split(alpha);
    SplitForm sectioned = split(alpha, kDefaultClosedTol, section);

    // Same class either way; the potential absorbs the offsets.
    CHECK(sectioned.harmonic.c1 == doctest::Approx(plain.harmonic.c1).epsilon(1e-13));
    CHECK(sectioned.harmonic.c2 == doctest::Approx(plain.harmonic.c2).epsilon(1e-13));
    OneFormField rebuilt = reconstruct(sectioned, g64, section);
    CHECK(field_sup_abs(rebuilt.a1 - alpha.a1) < 1e-9);
    CHECK(field_sup_abs(rebuilt.a2 - alpha.a2) < 1e-9);
    ScalarField diff = sectioned.potential
                       - (plain.potential - plain.harmonic.c1 * (*section.offset1)
                          - plain.harmonic.c2 * (*section.offset2));
    CHECK(field_sup_abs(diff) < 1e-10);
}
