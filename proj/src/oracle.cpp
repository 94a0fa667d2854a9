#include "eqd/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace eqd {

namespace {

double pow_size(double base, long e) {
    double r = 1;
    for (long i = 0; i < e; ++i) {
        r *= base;
        if (r > 1e18) return 1e18;
    }
    return r;
}

}  // namespace

ColumnLaw column_law(const DistributionSpec& dist, int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    dist.validate();
    if (dist.degenerate()) {
        // All coordinates coincide: the increment vector is identically 0.
        ColumnLaw law;
        law.dim = pair_count(n) - 1;
        law.denom = 1;
        law.atoms.emplace_back(std::vector<std::int32_t>(static_cast<std::size_t>(law.dim), 0),
                               BigInt(1));
        return law;
    }
    GeneralNormalization norm = normalize_general(dist);
    SpanEmbedding emb = make_span_embedding(norm.values);
    const std::size_t k = norm.values.size();
    if (pow_size(static_cast<double>(k), n) > double(1u << 24))
        throw BudgetExceeded("column law enumeration exceeds |X|^n <= 2^24");

    BigInt prob_denom = 1;
    for (const auto& p : norm.probs) prob_denom = big_lcm(prob_denom, BigInt(p.get_den()));
    std::vector<BigInt> weights;
    for (const auto& p : norm.probs) {
        Rat w = p * Rat(prob_denom);
        weights.push_back(w.get_num());
    }

    // First pass: rational embedded vectors per tuple, tracking the global
    // denominator so all atoms share one integer scale.
    const int m = pair_count(n);
    const int dim = (m - 1) * emb.ell;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<SurdSum> xs(static_cast<std::size_t>(n));
    std::map<std::vector<Rat>, BigInt> acc;
    for (;;) {
        BigInt w = 1;
        for (int i = 0; i < n; ++i) {
            xs[std::size_t(i)] = norm.values[idx[std::size_t(i)]];
            w *= weights[idx[std::size_t(i)]];
        }
        acc[embedded_squared_diff(xs, emb)] += w;
        int pos = n - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == k) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    BigInt scale = 1;
    for (const auto& [pt, w] : acc)
        for (const auto& c : pt) scale = big_lcm(scale, BigInt(c.get_den()));

    ColumnLaw law;
    law.dim = dim;
    law.denom = int_pow(prob_denom, static_cast<unsigned long>(n));
    for (const auto& [pt, w] : acc) {
        std::vector<std::int32_t> ip(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) {
            Rat x = pt[std::size_t(c)] * Rat(scale);
            BigInt num = x.get_num();
            if (!num.fits_sint_p())
                throw BudgetExceeded("column law coordinates exceed 32-bit range");
            ip[std::size_t(c)] = static_cast<std::int32_t>(num.get_si());
            law.max_abs = std::max(law.max_abs, static_cast<std::int32_t>(std::abs(ip[std::size_t(c)])));
        }
        law.atoms.emplace_back(std::move(ip), w);
    }
    std::sort(law.atoms.begin(), law.atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt total = 0;
    for (const auto& [pt, w] : law.atoms) total += w;
    if (total != law.denom) throw std::logic_error("column law mass mismatch");
    return law;
}

namespace {

// Keys: biased 16-bit coordinates, lexicographic order. The bias makes the
// unsigned per-field order match the signed coordinate order, and wrapping
// field addition of raw deltas preserves the bias. Coordinate bounds are
// validated before a run, so fields cannot wrap.
template <int MaxDim>
struct PackedKey {
    std::array<std::uint16_t, MaxDim> f{};
    friend bool operator<(const PackedKey& a, const PackedKey& b) { return a.f < b.f; }
    friend bool operator==(const PackedKey& a, const PackedKey& b) { return a.f == b.f; }
};

template <int MaxDim>
PackedKey<MaxDim> key_add(const PackedKey<MaxDim>& a, const PackedKey<MaxDim>& d) {
    PackedKey<MaxDim> out;
    for (int i = 0; i < MaxDim; ++i)
        out.f[std::size_t(i)] =
            static_cast<std::uint16_t>(a.f[std::size_t(i)] + d.f[std::size_t(i)]);
    return out;
}

using u128 = unsigned __int128;

inline void count_add(u128& a, const u128& b) { a += b; }
inline void count_add(BigInt& a, const BigInt& b) { a += b; }
inline void count_add(double& a, const double& b) { a += b; }
inline u128 count_mul(const u128& a, const u128& b) { return a * b; }
inline BigInt count_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline double count_mul(const double& a, const double& b) { return a * b; }

BigInt to_bigint(const u128& v) {
    BigInt hi = static_cast<unsigned long>(v >> 64);
    BigInt lo = static_cast<unsigned long>(v & ~0ull);
    return (hi << 64) + lo;
}
BigInt to_bigint(const BigInt& v) { return v; }

template <int MaxDim, typename Count>
struct DPEngine {
    using Key = PackedKey<MaxDim>;
    using Entry = std::pair<Key, Count>;

    static Key zero_key(int dim) {
        Key k;
        for (int i = 0; i < dim; ++i) k.f[std::size_t(i)] = 0x8000;
        return k;
    }
    static Key delta_key(const std::vector<std::int32_t>& pt) {
        Key k;
        for (std::size_t i = 0; i < pt.size(); ++i)
            k.f[i] = static_cast<std::uint16_t>(static_cast<std::int16_t>(pt[i]));
        return k;
    }

    // One convolution step: k-way merge of the table shifted by each atom.
    static std::vector<Entry> convolve(const std::vector<Entry>& table,
                                       const std::vector<std::pair<Key, Count>>& atoms,
                                       std::size_t max_states) {
        const std::size_t na = atoms.size();
        std::vector<std::size_t> pos(na, 0);
        std::vector<Key> head(na);
        // Heap of atom cursors ordered by current shifted key.
        std::vector<std::uint32_t> heap;
        heap.reserve(na);
        auto key_of = [&](std::uint32_t a) { return head[a]; };
        auto heap_less = [&](std::uint32_t a, std::uint32_t b) {
            return key_of(b) < key_of(a);  // min-heap via greater-than
        };
        for (std::uint32_t a = 0; a < na; ++a) {
            head[a] = key_add(table[0].first, atoms[a].first);
            heap.push_back(a);
        }
        std::make_heap(heap.begin(), heap.end(), heap_less);

        std::vector<Entry> out;
        out.reserve(table.size() + table.size() / 2);
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), heap_less);
            std::uint32_t a = heap.back();
            heap.pop_back();
            Count contrib = count_mul(table[pos[a]].second, atoms[a].second);
            if (!out.empty() && out.back().first == head[a]) {
                count_add(out.back().second, contrib);
            } else {
                if (out.size() >= max_states)
                    throw BudgetExceeded("DP state budget exceeded (" +
                                         std::to_string(max_states) +
                                         " states); try float mode or Monte Carlo");
                out.emplace_back(head[a], std::move(contrib));
            }
            if (++pos[a] < table.size()) {
                head[a] = key_add(table[pos[a]].first, atoms[a].first);
                heap.push_back(a);
                std::push_heap(heap.begin(), heap.end(), heap_less);
            }
        }
        return out;
    }
};

template <int MaxDim, typename Count>
std::pair<std::vector<std::pair<PackedKey<MaxDim>, Count>>, std::size_t> run_dp(
    const ColumnLaw& law, long d, std::size_t max_states,
    const std::vector<Count>& atom_weights) {
    using E = DPEngine<MaxDim, Count>;
    std::vector<std::pair<PackedKey<MaxDim>, Count>> table;
    table.emplace_back(E::zero_key(law.dim), Count(1));
    std::vector<std::pair<PackedKey<MaxDim>, Count>> atoms;
    for (std::size_t i = 0; i < law.atoms.size(); ++i)
        atoms.emplace_back(E::delta_key(law.atoms[i].first), atom_weights[i]);
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t peak = 1;
    for (long step = 0; step < d; ++step) {
        table = E::convolve(table, atoms, max_states);
        peak = std::max(peak, table.size());
    }
    return {std::move(table), peak};
}

void check_dp_feasible(const ColumnLaw& law, long d) {
    if (d < 0) throw std::invalid_argument("d must be nonnegative");
    if (law.dim > 16)
        throw BudgetExceeded("DP state dimension " + std::to_string(law.dim) +
                             " exceeds the supported bound of 16");
    if (static_cast<long long>(law.max_abs) * d > 32000)
        throw BudgetExceeded("DP coordinate range exceeds 16-bit packing");
}

template <typename Count>
Count to_count(const BigInt& w) {
    if constexpr (std::is_same_v<Count, BigInt>)
        return w;
    else
        return static_cast<Count>(w.get_ui()) |
               (static_cast<Count>(mpz_class(w >> 64).get_ui()) << 64);
}

struct SessionBase {
    virtual ~SessionBase() = default;
    virtual void advance_to(long d) = 0;
    virtual BigInt origin_mass() const = 0;
    virtual BigInt total_mass() const = 0;
    virtual std::size_t peak() const = 0;
    virtual long pos() const = 0;
};

template <int MaxDim, typename Count>
struct SessionImpl final : SessionBase {
    using E = DPEngine<MaxDim, Count>;
    using Entry = std::pair<PackedKey<MaxDim>, Count>;

    std::vector<Entry> table, atoms;
    PackedKey<MaxDim> origin;
    std::size_t max_states_, peak_ = 1;
    long d_ = 0;

    SessionImpl(const ColumnLaw& law, std::size_t max_states) : max_states_(max_states) {
        origin = E::zero_key(law.dim);
        table.emplace_back(origin, Count(1));
        for (const auto& [pt, w] : law.atoms)
            atoms.emplace_back(E::delta_key(pt), to_count<Count>(w));
        std::sort(atoms.begin(), atoms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    void advance_to(long d) override {
        while (d_ < d) {
            table = E::convolve(table, atoms, max_states_);
            ++d_;
            peak_ = std::max(peak_, table.size());
        }
    }
    BigInt origin_mass() const override {
        auto it = std::lower_bound(table.begin(), table.end(), origin,
                                   [](const Entry& e, const PackedKey<MaxDim>& k) {
                                       return e.first < k;
                                   });
        if (it == table.end() || !(it->first == origin)) return BigInt(0);
        return to_bigint(it->second);
    }
    BigInt total_mass() const override {
        BigInt mass = 0;
        for (const auto& [key, cnt] : table) mass += to_bigint(cnt);
        return mass;
    }
    std::size_t peak() const override { return peak_; }
    long pos() const override { return d_; }
};

std::unique_ptr<SessionBase> make_session(const ColumnLaw& law, long d_hint,
                                          std::size_t max_states) {
    double bits = static_cast<double>(d_hint) * std::log2(law.denom.get_d());
    bool small = bits <= 120;
    if (law.dim <= 8)
        return small ? std::unique_ptr<SessionBase>(new SessionImpl<8, u128>(law, max_states))
                     : std::unique_ptr<SessionBase>(new SessionImpl<8, BigInt>(law, max_states));
    return small ? std::unique_ptr<SessionBase>(new SessionImpl<16, u128>(law, max_states))
                 : std::unique_ptr<SessionBase>(new SessionImpl<16, BigInt>(law, max_states));
}

}  // namespace

struct ExactDPSession::Impl {
    std::unique_ptr<SessionBase> session;
    BigInt denom;
    long d_hint;
};

ExactDPSession::ExactDPSession(const ColumnLaw& law, long d_hint, const DPLimits& lim) {
    check_dp_feasible(law, d_hint);
    impl_ = std::make_unique<Impl>();
    impl_->session = make_session(law, d_hint, lim.max_states);
    impl_->denom = law.denom;
    impl_->d_hint = d_hint;
}

ExactDPSession::~ExactDPSession() = default;
ExactDPSession::ExactDPSession(ExactDPSession&&) noexcept = default;
ExactDPSession& ExactDPSession::operator=(ExactDPSession&&) noexcept = default;

Rat ExactDPSession::advance_to(long d) {
    if (d < impl_->session->pos())
        throw std::invalid_argument("DP session can only advance forward");
    if (d > impl_->d_hint) throw std::invalid_argument("DP session advanced past its hint");
    impl_->session->advance_to(d);
    Rat p = Rat(impl_->session->origin_mass()) /
            Rat(int_pow(impl_->denom, static_cast<unsigned long>(d)));
    p.canonicalize();
    return p;
}

long ExactDPSession::current_d() const { return impl_->session->pos(); }
std::size_t ExactDPSession::peak_states() const { return impl_->session->peak(); }

DPRun exact_p_d_run(const ColumnLaw& law, long d, const DPLimits& lim) {
    check_dp_feasible(law, d);
    if (d == 0) return DPRun{Rat(1), 1, BigInt(1)};
    ExactDPSession session(law, d, lim);
    DPRun out;
    out.p = session.advance_to(d);
    out.peak_states = session.peak_states();
    out.final_mass = session.impl_->session->total_mass();
    return out;
}

Rat exact_p_d(const ColumnLaw& law, long d, const DPLimits& lim) {
    return exact_p_d_run(law, d, lim).p;
}

Rat exact_p_d(const DistributionSpec& dist, int n, long d, const DPLimits& lim) {
    return exact_p_d(column_law(dist, n), d, lim);
}

FloatDPRun float_p_d_run(const ColumnLaw& law, long d, const FloatDPLimits& lim) {
    check_dp_feasible(law, d);
    if (d == 0) return FloatDPRun{1.0, 1};
    std::vector<double> weights;
    double den = law.denom.get_d();
    for (const auto& [pt, w] : law.atoms) weights.push_back(w.get_d() / den);
    FloatDPRun out;
    if (law.dim <= 8) {
        auto [table, peak] = run_dp<8, double>(law, d, lim.max_states, weights);
        out.peak_states = peak;
        auto origin = DPEngine<8, double>::zero_key(law.dim);
        for (const auto& [key, cnt] : table)
            if (key == origin) out.p = cnt;
    } else {
        auto [table, peak] = run_dp<16, double>(law, d, lim.max_states, weights);
        out.peak_states = peak;
        auto origin = DPEngine<16, double>::zero_key(law.dim);
        for (const auto& [key, cnt] : table)
            if (key == origin) out.p = cnt;
    }
    return out;
}

double float_p_d(const DistributionSpec& dist, int n, long d, const FloatDPLimits& lim) {
    return float_p_d_run(column_law(dist, n), d, lim).p;
}

Rat brute_p_d(const DistributionSpec& dist, int n, long d) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    if (d < 0) throw std::invalid_argument("d must be nonnegative");
    dist.validate();
    if (d == 0) return Rat(1);
    auto eff = dist.effective();
    const std::size_t k = eff.size();
    if (pow_size(static_cast<double>(k), static_cast<long>(n) * d) > double(1u << 24))
        throw BudgetExceeded("brute-force enumeration exceeds |X|^(n d) <= 2^24");

    BigInt prob_denom = 1;
    for (const auto& [x, p] : eff) prob_denom = big_lcm(prob_denom, BigInt(p.get_den()));
    std::vector<BigInt> weights;
    for (const auto& [x, p] : eff) {
        Rat w = p * Rat(prob_denom);
        weights.push_back(w.get_num());
    }
    // Pairwise squared differences, exact surd arithmetic.
    std::vector<SurdSum> sq(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            sq[a * k + b] = square(eff[a].first - eff[b].first);

    const long cells = static_cast<long>(n) * d;
    std::vector<std::size_t> idx(static_cast<std::size_t>(cells), 0);
    BigInt hits = 0;
    const int m = pair_count(n);
    std::vector<SurdSum> dist2(static_cast<std::size_t>(m));
    for (;;) {
        // Column-major cells: coordinate l of vector i at l*n + i.
        bool equal = true;
        int p = 0;
        for (int i = 0; i < n && equal; ++i)
            for (int j = i + 1; j < n && equal; ++j, ++p) {
                SurdSum s;
                for (long l = 0; l < d; ++l)
                    s = s + sq[idx[std::size_t(l * n + i)] * k + idx[std::size_t(l * n + j)]];
                dist2[std::size_t(p)] = s;
                if (p > 0 && !(s == dist2[0])) equal = false;
            }
        if (equal) {
            BigInt w = 1;
            for (long c = 0; c < cells; ++c) w *= weights[idx[std::size_t(c)]];
            hits += w;
        }
        long pos = cells - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == k) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    Rat out = Rat(hits) / Rat(int_pow(prob_denom, static_cast<unsigned long>(cells)));
    out.canonicalize();
    return out;
}

}  // namespace eqd
