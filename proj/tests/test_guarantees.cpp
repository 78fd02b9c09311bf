#include "shatter/guarantees.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace shatter;

TEST(EpsilonThreshold, ByKind) {
    EXPECT_NEAR(epsilon_threshold(shattering_growth_form::exponential(0.001)), 0.0632456, 1e-7);
    EXPECT_NEAR(epsilon_threshold(shattering_growth_form::exponential(0.01)), 0.2, 1e-12);
    EXPECT_EQ(epsilon_threshold(shattering_growth_form::constant(std::log(4.0))), 0.0);
    EXPECT_EQ(epsilon_threshold(shattering_growth_form::polynomial(2.0)), 0.0);
    EXPECT_EQ(epsilon_threshold(shattering_growth_form::power_law(1.0, 0.5)), 0.0);
    EXPECT_TRUE(std::isinf(epsilon_threshold(shattering_growth_form::power_law(1.0, 1.5))));
    EXPECT_EQ(shattering_growth_form::power_law(0.3, 1.0).kind, growth_form_kind::exponential);
}

TEST(EpsilonThreshold, AsymptoteMatchesThreshold) {
    for (double a = 1e-4; a <= 1.0; a *= 1.7) {
        const auto f = shattering_growth_form::exponential(a);
        EXPECT_DOUBLE_EQ(genbound_asymptote(f, 0.05), epsilon_threshold(f));
        // and the bound itself approaches it at large n
        const double big = generalization_bound(f, 0.0, 1e12, 0.05);
        EXPECT_NEAR(big, std::sqrt(4.0 * a), 1e-4);
    }
    EXPECT_EQ(genbound_asymptote(shattering_growth_form::polynomial(3.0), 0.01), 0.0);
}

TEST(EpsilonThreshold, FormErrors) {
    EXPECT_THROW((void)shattering_growth_form::polynomial(-1.0), input_error);
    EXPECT_THROW((void)shattering_growth_form::exponential(0.0), input_error);
    EXPECT_THROW((void)shattering_growth_form::power_law(1.0, 0.0), input_error);
}

TEST(SampleSize, ExponentialClosedForm) {
    EXPECT_EQ(sample_size_exponential(0.05, 0.001), 14755518u);
    EXPECT_EQ(sample_size_exponential(0.05, 0.01), 147556u);
    EXPECT_EQ(sample_size_exponential(2.0 * std::exp(-4.0), 1.0), 16u);
    EXPECT_THROW((void)sample_size_exponential(0.0, 0.1), input_error);
    EXPECT_THROW((void)sample_size_exponential(1.0, 0.1), input_error);
    EXPECT_THROW((void)sample_size_exponential(0.05, 0.0), input_error);
}

TEST(SampleSize, ExponentialMonotonicity) {
    for (double delta = 0.01; delta < 0.9; delta *= 1.5) {
        std::uint64_t prev = 0;
        for (double zeta = 1.0; zeta > 1e-3; zeta /= 1.6) {
            const auto n = sample_size_exponential(delta, zeta);
            EXPECT_GE(n, prev);
            EXPECT_GE(n, sample_size_exponential(delta * 1.5 < 1.0 ? delta * 1.5 : delta, zeta));
            prev = n;
        }
    }
}

TEST(SampleSize, PolynomialSquare) {
    const auto n = sample_size_general(shattering_growth_form::polynomial(2.0), 0.05, 0.01);
    ASSERT_TRUE(n.has_value());
    EXPECT_NEAR(static_cast<double>(*n), 1301610.0, 5.0);
}

TEST(SampleSize, ExponentialSolversAgree) {
    for (const double a : {1e-4, 1e-3, 0.01}) {
        const auto form = shattering_growth_form::exponential(a);
        for (const double zeta : {0.1, 0.03, 0.01}) {
            for (const double delta : {0.01, 0.05, 0.2}) {
                const auto general = sample_size_general(form, delta, epsilon_with_slack(form, zeta));
                ASSERT_TRUE(general.has_value());
                const auto closed = sample_size_exponential(delta, zeta);
                EXPECT_LE(std::llabs(static_cast<long long>(*general) - static_cast<long long>(closed)), 1)
                    << "a=" << a << " zeta=" << zeta << " delta=" << delta;
            }
        }
    }
}

TEST(SampleSize, NoFiniteSampleSizeBelowThreshold) {
    const auto form = shattering_growth_form::exponential(0.01);  // threshold 0.2
    EXPECT_FALSE(sample_size_general(form, 0.05, 0.1).has_value());
    EXPECT_FALSE(sample_size_general(form, 0.05, 0.2).has_value());
    EXPECT_TRUE(sample_size_general(form, 0.05, 0.25).has_value());
    EXPECT_FALSE(sample_size_general(shattering_growth_form::power_law(1.0, 1.5), 0.05, 10.0).has_value());
}

TEST(SampleSize, GeneralSolutionIsTheSmallest) {
    const std::vector<shattering_growth_form> forms{
        shattering_growth_form::constant(std::log(4.0)), shattering_growth_form::polynomial(3.0, 1.0),
        shattering_growth_form::power_law(0.5, 0.6), shattering_growth_form::exponential(0.002)};
    for (const auto& form : forms) {
        for (const double eps : {0.5, 0.2, 0.1}) {
            const auto n = sample_size_general(form, 0.05, eps);
            ASSERT_TRUE(n.has_value());
            const double extra = form.kind == growth_form_kind::polynomial ? std::log(2.0) : 0.0;
            auto log_bound = [&](double x) { return std::log(2.0) + extra + form.log_at(x) - x * eps * eps / 4.0; };
            EXPECT_LE(log_bound(static_cast<double>(*n)), std::log(0.05));
            if (*n > 1) {
                EXPECT_GT(log_bound(static_cast<double>(*n - 1)), std::log(0.05));
            }
        }
    }
}

TEST(SampleSizeProperty, MonotoneInEpsilonAndDelta) {
    const auto form = shattering_growth_form::polynomial(2.0);
    std::uint64_t prev = 0;
    for (double eps = 0.5; eps > 0.01; eps /= 1.4) {
        const auto n = *sample_size_general(form, 0.05, eps);
        EXPECT_GE(n, prev);
        prev = n;
    }
    prev = 0;
    for (double delta = 0.5; delta > 1e-6; delta /= 3.0) {
        const auto n = *sample_size_general(form, delta, 0.05);
        EXPECT_GE(n, prev);
        prev = n;
    }
}

TEST(GeneralizationBound, PolynomialSquareAtOneMillion) {
    const double b = generalization_bound(shattering_growth_form::polynomial(2.0), 0.0, 1e6, 0.05);
    EXPECT_NEAR(b, 0.011192837097008511, 1e-9);
    EXPECT_NEAR(generalization_bound(shattering_growth_form::polynomial(2.0), 0.1, 1e6, 0.05), 0.1 + b, 1e-12);
}

TEST(GeneralizationBound, PolynomialDecreasesTowardZero) {
    const auto form = shattering_growth_form::polynomial(2.0);
    double prev = INFINITY;
    for (double n = 100; n < 1e12; n *= 3.0) {
        const double b = generalization_bound(form, 0.0, n, 0.05);
        EXPECT_LT(b, prev);
        prev = b;
    }
    EXPECT_LT(prev, 1e-4);
}

TEST(GeneralizationBound, Errors) {
    const auto form = shattering_growth_form::polynomial(1.0);
    EXPECT_THROW((void)generalization_bound(form, -0.1, 10, 0.05), input_error);
    EXPECT_THROW((void)generalization_bound(form, 0.0, 0.5, 0.05), input_error);
    EXPECT_THROW((void)generalization_bound(form, 0.0, 10, 1.5), input_error);
}

TEST(FormsFromGrowth, RegionRoute) {
    const growth_model flat{growth_family::constant, 2.0, 0.0, 0.0};
    const auto f = form_from_regions(flat, 2);
    EXPECT_EQ(f.kind, growth_form_kind::constant);
    EXPECT_NEAR(f.offset, std::log(4.0), 1e-12);
    EXPECT_NEAR(f.log_at(1e6), std::log(4.0), 1e-12);

    const growth_model lin{growth_family::linear, 0.4, 3.0, 0.0};
    const auto g = form_from_regions(lin, 2);
    EXPECT_EQ(g.kind, growth_form_kind::exponential);
    EXPECT_NEAR(g.coefficient, 0.4 * std::log(2.0), 1e-12);
    EXPECT_NEAR(epsilon_threshold(g), std::sqrt(1.6 * std::log(2.0)), 1e-12);
    // exact value: 2^ceil(0.4 n + 3) for two classes
    EXPECT_NEAR(g.log_at(100.0), 43.0 * std::log(2.0), 1e-9);

    const growth_model pw{growth_family::power, 2.0, 0.5, 0.0};
    EXPECT_EQ(form_from_regions(pw, 3).kind, growth_form_kind::subexponential);
    EXPECT_THROW((void)form_from_regions(flat, 1), input_error);
}

TEST(FormsFromGrowth, HyperplaneRoute) {
    const growth_model flat{growth_family::constant, 2.0, 0.0, 0.0};
    const auto [lo, up] = forms_from_hyperplanes(flat, 2, 2);
    EXPECT_EQ(lo.kind, growth_form_kind::constant);
    EXPECT_EQ(up.kind, growth_form_kind::constant);
    EXPECT_NEAR(lo.log_at(1e5), std::log(4.0), 1e-12);
    EXPECT_NEAR(up.log_at(1e5), std::log(2048.0), 1e-9);

    const growth_model lin{growth_family::linear, 0.5, 0.0, 0.0};
    const auto [l1, u1] = forms_from_hyperplanes(lin, 1, 2);  // exponent 2*1/2 = 1
    EXPECT_EQ(u1.kind, growth_form_kind::exponential);
    EXPECT_EQ(l1.kind, growth_form_kind::subexponential);
    const auto [l2, u2] = forms_from_hyperplanes(lin, 3, 2);  // exponent 6/4
    EXPECT_EQ(u2.kind, growth_form_kind::superexponential);
    EXPECT_EQ(l2.kind, growth_form_kind::superexponential);
    for (double n = 10; n < 1e4; n *= 2.5) {
        EXPECT_LE(l2.log_at(n), u2.log_at(n) + 1e-9);
    }
}
