#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "raidsim/distributions.hpp"
#include "raidsim/errors.hpp"

using namespace raidsim;

namespace {

// Gamma function by composite Simpson integration of t^(z-1) e^-t after the substitution t = u^k,
// independent of std::tgamma.
double gamma_by_quadrature(double z) {
    const double k = 4.0;
    auto f = [&](double u) {
        if (u == 0.0) return 0.0;
        const double t = std::pow(u, k);
        return std::pow(t, z - 1.0) * std::exp(-t) * k * std::pow(u, k - 1.0);
    };
    const int n = 200000;
    const double a = 0.0, b = 3.0;  // t up to 81
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST(Weibull, QuantileReducesToExponentialForShapeOne) {
    EXPECT_NEAR(weibull_quantile({0, 1, 1}, 0.5), std::log(2.0), 1e-15);
}

TEST(Weibull, ZeroUniformGivesLocation) {
    EXPECT_DOUBLE_EQ(weibull_quantile({20, 40, 2}, 0.0), 20.0);
}

TEST(Weibull, SampleMeanMatchesGammaFunction) {
    const WeibullParams p{0, 302016, 1.13};
    const double expected = p.eta * gamma_by_quadrature(1.0 + 1.0 / p.beta);
    EXPECT_NEAR(expected, 2.8894e5, 0.0001 * 2.8894e5);
    RandomStream s(11, 0, Purpose::Test);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_weibull(p, s);
    EXPECT_NEAR(sum / n, expected, 0.005 * expected);
    EXPECT_NEAR(p.mean(), expected, 1e-6 * expected);
}

TEST(Weibull, SamplesNeverBelowLocation) {
    const WeibullParams p{2.7e-7, 5.5e-7, 2};
    RandomStream s(3, 1, Purpose::Test);
    for (int i = 0; i < 100000; ++i) EXPECT_GE(sample_weibull(p, s), p.gamma);
}

TEST(Weibull, CdfExamples) {
    EXPECT_EQ(weibull_cdf({6, 12, 2}, 6.0), 0.0);
    EXPECT_EQ(weibull_cdf({6, 12, 2}, 3.0), 0.0);
    for (double beta : {0.5, 1.0, 1.13, 3.0}) EXPECT_NEAR(weibull_cdf({0, 500, beta}, 500), 1.0 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(weibull_cdf({0, 9259, 1}, 87600), 1.0 - std::exp(-87600.0 / 9259.0), 1e-15);
    EXPECT_NEAR(weibull_cdf({0, 9259, 1}, 87600), 0.99992, 1e-5);
}

TEST(Weibull, InvalidParametersRejected) {
    RandomStream s(1, 0);
    EXPECT_THROW(sample_weibull({0, 0, 1}, s), ParameterError);
    EXPECT_THROW(sample_weibull({0, 1, -1}, s), ParameterError);
    EXPECT_THROW(weibull_cdf({-1, 1, 1}, 1), ParameterError);
    EXPECT_THROW(weibull_cdf({0, std::nan(""), 1}, 1), ParameterError);
}

TEST(Weibull, EmpiricalCdfWithinKolmogorovBound) {
    const std::vector<WeibullParams> cases = {{0, 302016, 1.13}, {0, 4833522, 0.576}, {6, 168, 3}, {20, 40, 2}};
    const int n = 1000000;
    const double bound = 1.628 / std::sqrt(static_cast<double>(n));  // 99% KS critical value
    std::uint64_t stream_id = 0;
    for (const auto& p : cases) {
        RandomStream s(99, stream_id++, Purpose::Test);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_weibull(p, s);
        std::sort(xs.begin(), xs.end());
        for (int q = 1; q <= 10; ++q) {
            const double prob = q / 11.0;
            const double t = weibull_quantile(p, prob);
            const double empirical =
                static_cast<double>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin()) / n;
            EXPECT_LE(std::abs(empirical - weibull_cdf(p, t)), bound) << "eta " << p.eta << " q " << q;
        }
    }
}

TEST(RateMatching, Examples) {
    EXPECT_NEAR(match_exponential_rate({0, 12325, 1}, 87600), 1.0 / 12325, 1e-18);
    EXPECT_NEAR(match_exponential_rate({0, 12325, 1}, 10), 1.0 / 12325, 1e-18);
    const double disk_a = match_exponential_rate({0, 302016, 1.13}, 87600);
    EXPECT_NEAR(disk_a, std::pow(87600.0 / 302016.0, 1.13) / 87600.0, 1e-20);
    EXPECT_NEAR(disk_a, 2.82e-6, 0.01e-6);
    EXPECT_NEAR(match_exponential_rate({0, 5000, 2.7}, 5000), 1.0 / 5000, 1e-18);
}

TEST(RateMatching, RejectsLocationParameter) {
    EXPECT_THROW(match_exponential_rate({20, 40, 2}, 87600), ParameterError);
    EXPECT_THROW(match_exponential_rate({0, 40, 2}, 0), ParameterError);
}

TEST(RateMatching, CumulativeHazardIdentity) {
    for (const WeibullParams p : {WeibullParams{0, 302016, 1.13}, WeibullParams{0, 124, 2.1}, WeibullParams{0, 8760, 1.4}})
        for (double t : {100.0, 8760.0, 87600.0}) {
            const double lhs = match_exponential_rate(p, t) * t;
            const double rhs = -std::log1p(-weibull_cdf(p, t));
            if (rhs < 10) EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, rhs));
        }
}

TEST(Uniform, Examples) {
    RandomStream s(5, 0);
    EXPECT_EQ(sample_uniform(5, 5, s), 5.0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) sum += sample_uniform(0, 10, s);
    EXPECT_NEAR(sum / 100000, 5.0, 0.1);
    for (int i = 0; i < 10000; ++i) {
        const double v = sample_uniform(2, 4, s);
        EXPECT_GE(v, 2.0);
        EXPECT_LE(v, 4.0);
    }
    EXPECT_THROW(sample_uniform(4, 2, s), ParameterError);
}

TEST(RandomStream, ReproducibleForSameKey) {
    RandomStream a(42, 7, Purpose::DiskFailure, 3), b(42, 7, Purpose::DiskFailure, 3);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_weibull({0, 10, 1.5}, a), sample_weibull({0, 10, 1.5}, b));
}

TEST(RandomStream, DistinctKeysLookIndependent) {
    const std::vector<RandomStream> proto = {RandomStream(42, 7, Purpose::DiskFailure, 3),
                                             RandomStream(42, 8, Purpose::DiskFailure, 3),
                                             RandomStream(42, 7, Purpose::LseArrival, 3),
                                             RandomStream(42, 7, Purpose::DiskFailure, 4),
                                             RandomStream(43, 7, Purpose::DiskFailure, 3)};
    const int n = 100000;
    std::vector<std::vector<double>> v(proto.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < proto.size(); ++k) {
        RandomStream s = proto[k];
        for (auto& x : v[k]) x = s.next_uniform();
    }
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            double sab = 0.0;
            for (int i = 0; i < n; ++i) sab += (v[a][i] - 0.5) * (v[b][i] - 0.5);
            const double corr = sab / n * 12.0;
            EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(static_cast<double>(n))) << a << " vs " << b;
        }
    const double mean = std::accumulate(v[0].begin(), v[0].end(), 0.0) / n;
    EXPECT_NEAR(mean, 0.5, 0.005);
}

TEST(RandomStream, UniformRange) {
    RandomStream s(0, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.next_uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}
