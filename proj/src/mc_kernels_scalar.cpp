#include "eqd/mc_kernels.hpp"
#include "eqd/philox.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace eqd {

namespace {

inline std::uint32_t draw_value(PhiloxStream& st, const MCJob& job, std::uint64_t reject_limit) {
    for (;;) {
        std::uint32_t r = st.next_u32();
        std::uint32_t u;
        if ((job.denom & (job.denom - 1)) == 0) {
            u = r & (job.denom - 1);
        } else {
            if (r >= reject_limit) continue;
            u = r % job.denom;
        }
        std::uint32_t v = 0;
        while (u >= job.cdf[v]) ++v;
        return v;
    }
}

}  // namespace

std::uint64_t mc_count_scalar(const MCJob& job, std::uint64_t first, std::uint64_t count) {
    const int n = job.n, k = job.k, ell = job.ell;
    const int m = n * (n - 1) / 2;
    const std::uint64_t reject_limit =
        job.denom * ((1ull << 32) / job.denom);  // multiples of denom below 2^32
    std::vector<std::int64_t> acc(static_cast<std::size_t>(m) * ell);
    std::vector<std::uint32_t> v(static_cast<std::size_t>(n));
    std::uint64_t hits = 0;
    for (std::uint64_t s = first; s < first + count; ++s) {
        PhiloxStream st(job.seed, s);
        std::fill(acc.begin(), acc.end(), 0);
        for (long c = 0; c < job.d; ++c) {
            for (int i = 0; i < n; ++i) v[std::size_t(i)] = draw_value(st, job, reject_limit);
            int p = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++p) {
                    const std::int32_t* e =
                        &job.table[(std::size_t(v[std::size_t(i)]) * k + v[std::size_t(j)]) *
                                   ell];
                    for (int t = 0; t < ell; ++t) acc[std::size_t(p) * ell + t] += e[t];
                }
        }
        bool hit = true;
        for (int p = 1; p < m && hit; ++p)
            for (int t = 0; t < ell && hit; ++t)
                if (acc[std::size_t(p) * ell + t] != acc[std::size_t(t)]) hit = false;
        hits += hit ? 1 : 0;
    }
    return hits;
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool avx2_eligible(const MCJob& job) {
    if (job.ell != 1 || job.k > 16 || job.n > 8) return false;
    if (job.denom == 0 || (job.denom & (job.denom - 1)) != 0) return false;
    std::int64_t max_abs = 0;
    for (std::int32_t x : job.table)
        max_abs = std::max(max_abs, x < 0 ? -static_cast<std::int64_t>(x)
                                          : static_cast<std::int64_t>(x));
    return max_abs * job.d < (1ll << 30);
}

}  // namespace eqd
