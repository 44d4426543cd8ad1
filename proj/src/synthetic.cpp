#include "synarch/corpus.hpp"

#include "synarch/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace synarch {

namespace {

// mt19937_64 is bit-exact across standard libraries; the distributions are
// not, so uniforms and skips are derived by hand.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Number of failures before the next success of a Bernoulli(p) sequence.
    std::uint64_t skip(double p) {
        if (p >= 1.0) return 0;
        const double u = uniform();
        const double k = std::floor(std::log1p(-u) / std::log1p(-p));
        return k >= 1e18 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(k);
    }

private:
    std::mt19937_64 engine_;
};

// Visits the positions 0..count-1 that succeed under independent Bernoulli(p) trials.
template <typename Visit>
void bernoulli_positions(Sampler& sampler, std::uint64_t count, double p, Visit&& visit) {
    if (p <= 0.0 || count == 0) return;
    std::uint64_t pos = sampler.skip(p);
    while (pos < count) {
        visit(pos);
        const auto step = sampler.skip(p);
        if (step >= count - pos) break;
        pos += step + 1;
    }
}

} // namespace

std::size_t synthetic_topic(PageId page, std::size_t pages_per_topic) {
    return static_cast<std::size_t>(page.value / pages_per_topic);
}

Corpus generate_synthetic(const SyntheticParams& params) {
    if (params.topics == 0) throw ArgumentError("topics must be positive");
    if (params.pages_per_topic == 0) throw ArgumentError("pages_per_topic must be positive");
    if (!(params.p_inter >= 0.0 && params.p_inter <= params.p_intra && params.p_intra <= 1.0)) {
        throw ArgumentError("probabilities must satisfy 0 <= p_inter <= p_intra <= 1");
    }

    const std::uint64_t per = params.pages_per_topic;
    const std::uint64_t total = params.topics * per;
    Sampler sampler(params.seed);

    RawCorpus raw;
    raw.categories.push_back({CategoryId{0}, "root", std::nullopt});
    for (std::uint64_t t = 0; t < params.topics; ++t) {
        raw.categories.push_back({CategoryId{t + 1}, "topic-" + std::to_string(t), CategoryId{0}});
    }

    raw.pages.reserve(total);
    for (std::uint64_t u = 0; u < total; ++u) {
        const std::uint64_t topic = u / per;
        const std::uint64_t first = topic * per;
        RawPage page;
        page.id = PageId{u};
        page.title = "t" + std::to_string(topic) + "-p" + std::to_string(u - first);
        page.categories.push_back(CategoryId{topic + 1});

        // Targets before the topic block, inside it (minus u), then after it.
        bernoulli_positions(sampler, first, params.p_inter, [&](std::uint64_t v) {
            page.links.push_back(PageId{v});
        });
        bernoulli_positions(sampler, per - 1, params.p_intra, [&](std::uint64_t k) {
            const auto v = first + k;
            page.links.push_back(PageId{v >= u ? v + 1 : v});
        });
        bernoulli_positions(sampler, total - first - per, params.p_inter, [&](std::uint64_t k) {
            page.links.push_back(PageId{first + per + k});
        });
        raw.pages.push_back(std::move(page));
    }
    return Corpus::build(std::move(raw));
}

} // namespace synarch
