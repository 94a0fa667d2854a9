#include "eqd/mc.hpp"

#include "eqd/oracle.hpp"
#include "eqd/overlap.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace eqd {

namespace {

constexpr std::uint64_t kShard = 1 << 16;  // fixed shard size; summation is shard-ordered

}  // namespace

MCJob make_mc_job(const DistributionSpec& dist, int n, long d, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    if (d < 0) throw std::invalid_argument("d must be nonnegative");
    dist.validate();
    GeneralNormalization norm = normalize_general(dist);
    SpanEmbedding emb = make_span_embedding(norm.values);
    const int k = static_cast<int>(norm.values.size());

    MCJob job;
    job.n = n;
    job.k = k;
    job.ell = emb.ell;
    job.d = d;
    job.seed = seed;

    // Integer pair table: coordinates of (x_a - x_b)^2 on a common scale.
    std::vector<std::vector<Rat>> sq(static_cast<std::size_t>(k) * k);
    BigInt scale = 1;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            auto c = emb.coords(square(norm.values[std::size_t(a)] - norm.values[std::size_t(b)]));
            for (const auto& x : c) scale = big_lcm(scale, BigInt(x.get_den()));
            sq[std::size_t(a) * k + b] = std::move(c);
        }
    job.table.resize(static_cast<std::size_t>(k) * k * emb.ell);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int t = 0; t < emb.ell; ++t) {
                Rat x = sq[std::size_t(a) * k + b][std::size_t(t)] * Rat(scale);
                BigInt num = x.get_num();
                if (!num.fits_sint_p())
                    throw BudgetExceeded("Monte Carlo pair table exceeds 32-bit coordinates");
                job.table[(std::size_t(a) * k + b) * emb.ell + t] =
                    static_cast<std::int32_t>(num.get_si());
            }
    std::int64_t max_abs = 0;
    for (auto x : job.table)
        max_abs = std::max(max_abs, x < 0 ? -static_cast<std::int64_t>(x)
                                          : static_cast<std::int64_t>(x));
    if (max_abs * d > (1ll << 62) / std::max(1, k))
        throw BudgetExceeded("Monte Carlo accumulators would overflow");

    // Sampling cdf over a common denominator.
    BigInt denom = 1;
    for (const auto& p : norm.probs) denom = big_lcm(denom, BigInt(p.get_den()));
    if (!denom.fits_uint_p() || denom.get_ui() > (1u << 31))
        throw BudgetExceeded("probability denominator too large for sampling");
    job.denom = static_cast<std::uint32_t>(denom.get_ui());
    std::uint32_t cum = 0;
    for (const auto& p : norm.probs) {
        Rat w = p * Rat(denom);
        cum += static_cast<std::uint32_t>(w.get_num().get_ui());
        job.cdf.push_back(cum);
    }
    if (cum != job.denom) throw std::logic_error("cdf does not close");
    return job;
}

MCResult mc_estimate(const DistributionSpec& dist, int n, long d, std::uint64_t samples,
                     std::uint64_t seed, int workers, McKernel kernel) {
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    MCJob job = make_mc_job(dist, n, d, seed);

    bool use_avx2;
    switch (kernel) {
        case McKernel::Scalar: use_avx2 = false; break;
        case McKernel::Avx2:
            if (!avx2_supported() || !avx2_eligible(job))
                throw std::invalid_argument("avx2 kernel not usable for this configuration");
            use_avx2 = true;
            break;
        default: use_avx2 = avx2_supported() && avx2_eligible(job); break;
    }
    auto count = use_avx2 ? mc_count_avx2 : mc_count_scalar;

    const std::uint64_t shards = (samples + kShard - 1) / kShard;
    std::vector<std::uint64_t> shard_hits(static_cast<std::size_t>(shards), 0);
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= shards) break;
            std::uint64_t first = i * kShard;
            std::uint64_t len = std::min(kShard, samples - first);
            shard_hits[static_cast<std::size_t>(i)] = count(job, first, len);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    MCResult out;
    out.samples = samples;
    out.seed = seed;
    out.kernel = use_avx2 ? "avx2" : "scalar";
    for (std::uint64_t h : shard_hits) out.hits += h;
    out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
    out.std_error =
        std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    return out;
}

}  // namespace eqd
