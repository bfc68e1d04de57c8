#include "raidsim/distributions.hpp"

#include <cmath>
#include <sstream>

#include "raidsim/errors.hpp"

namespace raidsim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stafford variant 13 finalizer (as used by SplitMix64).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string describe(const WeibullParams& p) {
    std::ostringstream os;
    os << "Weibull(gamma=" << p.gamma << ", eta=" << p.eta << ", beta=" << p.beta << ")";
    return os.str();
}

}  // namespace

bool WeibullParams::valid() const noexcept {
    return std::isfinite(gamma) && std::isfinite(eta) && std::isfinite(beta) && gamma >= 0.0 &&
           eta > 0.0 && beta > 0.0;
}

void WeibullParams::check() const {
    if (!valid()) throw ParameterError("invalid " + describe(*this));
}

double WeibullParams::mean() const {
    check();
    return gamma + eta * std::tgamma(1.0 + 1.0 / beta);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t array_index, Purpose purpose,
                           std::uint64_t lane) noexcept {
    std::uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ (array_index * 0xd1b54a32d192ed03ULL + kGolden));
    k = mix64(k ^ ((static_cast<std::uint64_t>(purpose) << 32) | (lane & 0xffffffffULL)));
    if (lane >> 32) k = mix64(k ^ lane);
    key_ = k;
}

std::uint64_t RandomStream::next_u64() noexcept {
    const std::uint64_t c = counter_++;
    return mix64(mix64(key_ + (c + 1) * kGolden) ^ c);
}

double RandomStream::next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double weibull_quantile(const WeibullParams& p, double u) {
    p.check();
    const double e = -std::log1p(-u);
    if (p.beta == 1.0) return p.gamma + p.eta * e;
    return p.gamma + p.eta * std::pow(e, 1.0 / p.beta);
}

double sample_weibull(const WeibullParams& params, RandomStream& stream) {
    return weibull_quantile(params, stream.next_uniform());
}

double weibull_cdf(const WeibullParams& p, double t) {
    p.check();
    if (t <= p.gamma) return 0.0;
    return -std::expm1(-std::pow((t - p.gamma) / p.eta, p.beta));
}

double match_exponential_rate(const WeibullParams& p, double mission) {
    p.check();
    if (!(mission > 0.0)) throw ParameterError("mission must be positive");
    if (p.gamma != 0.0)
        throw ParameterError("rate matching is only defined for gamma = 0, got " + describe(p));
    return std::pow(mission / p.eta, p.beta) / mission;
}

double sample_uniform(double lo, double hi, RandomStream& stream) {
    if (!(lo <= hi)) throw ParameterError("uniform interval has lo > hi");
    const double v = lo + (hi - lo) * stream.next_uniform();
    return v > hi ? hi : v;
}

}  // namespace raidsim
