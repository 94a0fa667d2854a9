#include "eqd/covariance.hpp"

#include <cmath>
#include <functional>

namespace eqd {

ScalarCov c_constants(const MomentSet& m) {
    if (m.var <= 0) throw std::invalid_argument("degenerate distribution: Var X = 0");
    ScalarCov c;
    Rat m1sq = m.m1 * m.m1;
    c.c0 = 2 * m.m4 - 8 * m.m3 * m.m1 + 2 * m.m2 * m.m2 + 8 * m1sq * m.m2 - 4 * m1sq * m1sq;
    c.c1 = m.m4 - 4 * m.m3 * m.m1 - m.m2 * m.m2 + 8 * m1sq * m.m2 - 4 * m1sq * m1sq;
    if (c.c0 - 2 * c.c1 != 4 * m.var * m.var)
        throw std::logic_error("moment identity c0 - 2 c1 = 4 var^2 violated");
    if (c.c1 != m.mu4 - m.var * m.var || c.c1 < 0)
        throw std::logic_error("moment identity c1 = mu4 - var^2 >= 0 violated");
    return c;
}

ScalarCov c_constants(const DistributionSpec& dist) { return c_constants(moments(dist)); }

namespace {

// Pair (i,j) of the flattened index p shares a vertex with pair q?
std::vector<std::vector<int>> adjacency_flags(int n) {
    auto pairs = all_pairs(n);
    const int m = static_cast<int>(pairs.size());
    std::vector<std::vector<int>> h(static_cast<std::size_t>(m),
                                    std::vector<int>(static_cast<std::size_t>(m), 0));
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            if (p == q) continue;
            int shared = (pairs[std::size_t(p)].i == pairs[std::size_t(q)].i) +
                         (pairs[std::size_t(p)].i == pairs[std::size_t(q)].j) +
                         (pairs[std::size_t(p)].j == pairs[std::size_t(q)].i) +
                         (pairs[std::size_t(p)].j == pairs[std::size_t(q)].j);
            h[std::size_t(p)][std::size_t(q)] = shared == 1 ? 1 : 0;
        }
    return h;
}

}  // namespace

RatMatrix cov_matrix_V(const ScalarCov& c, int n) {
    const int m = pair_count(n);
    auto h = adjacency_flags(n);
    RatMatrix out(m - 1, m - 1);
    for (int a = 1; a < m; ++a)
        for (int b = 1; b < m; ++b) {
            Rat v = c.c0 * (1 + (a == b ? 1 : 0)) +
                    c.c1 * (h[std::size_t(a)][std::size_t(b)] - h[0][std::size_t(a)] -
                            h[0][std::size_t(b)]);
            out.at(a - 1, b - 1) = v;
        }
    return out;
}

RatMatrix cov_matrix_V_general(const MatrixCov& c, int n) {
    const int m = pair_count(n);
    const int ell = c.c0.rows();
    auto h = adjacency_flags(n);
    RatMatrix out((m - 1) * ell, (m - 1) * ell);
    for (int a = 1; a < m; ++a)
        for (int b = 1; b < m; ++b) {
            int f0 = 1 + (a == b ? 1 : 0);
            int f1 = h[std::size_t(a)][std::size_t(b)] - h[0][std::size_t(a)] -
                     h[0][std::size_t(b)];
            for (int s = 0; s < ell; ++s)
                for (int t = 0; t < ell; ++t)
                    out.at((a - 1) * ell + s, (b - 1) * ell + t) =
                        f0 * c.c0.at(s, t) + f1 * c.c1.at(s, t);
        }
    return out;
}

namespace {

struct WeightedValues {
    std::vector<SurdSum> vals;
    std::vector<Rat> probs;
};

// E[f(X1..Xk)] over iid tuples, f vector-valued.
template <typename F>
std::vector<Rat> expect_tuples(const WeightedValues& w, int k, int dim, F&& f) {
    std::vector<Rat> acc(static_cast<std::size_t>(dim), Rat(0));
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<const SurdSum*> tuple(static_cast<std::size_t>(k));
    for (;;) {
        Rat p(1);
        for (int i = 0; i < k; ++i) {
            tuple[std::size_t(i)] = &w.vals[idx[std::size_t(i)]];
            p *= w.probs[idx[std::size_t(i)]];
        }
        std::vector<Rat> v = f(tuple);
        for (int c = 0; c < dim; ++c) acc[std::size_t(c)] += p * v[std::size_t(c)];
        int pos = k - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == w.vals.size()) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return acc;
}

RatMatrix outer_expect(const WeightedValues& w, int k, int dim,
                       const std::function<std::vector<Rat>(const std::vector<const SurdSum*>&)>& f,
                       const std::function<std::vector<Rat>(const std::vector<const SurdSum*>&)>& g) {
    RatMatrix acc(dim, dim);
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    std::vector<const SurdSum*> tuple(static_cast<std::size_t>(k));
    for (;;) {
        Rat p(1);
        for (int i = 0; i < k; ++i) {
            tuple[std::size_t(i)] = &w.vals[idx[std::size_t(i)]];
            p *= w.probs[idx[std::size_t(i)]];
        }
        std::vector<Rat> a = f(tuple), b = g(tuple);
        for (int r = 0; r < dim; ++r) {
            if (a[std::size_t(r)] == 0) continue;
            Rat pa = p * a[std::size_t(r)];
            for (int c = 0; c < dim; ++c)
                if (b[std::size_t(c)] != 0) acc.at(r, c) += pa * b[std::size_t(c)];
        }
        int pos = k - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == w.vals.size()) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return acc;
}

}  // namespace

MatrixCov c_matrices(const std::vector<SurdSum>& values, const std::vector<Rat>& probs,
                     const SpanEmbedding& emb) {
    WeightedValues w{values, probs};
    const int ell = emb.ell;
    auto a12 = [&](const std::vector<const SurdSum*>& t) {
        return emb.coords(square(*t[0] - *t[1]));
    };
    auto a13 = [&](const std::vector<const SurdSum*>& t) {
        return emb.coords(square(*t[0] - *t[2]));
    };
    std::vector<Rat> mean = expect_tuples(w, 2, ell, a12);
    RatMatrix e00 = outer_expect(w, 2, ell, a12, a12);
    std::function<std::vector<Rat>(const std::vector<const SurdSum*>&)> fa12 = a12, fa13 = a13;
    RatMatrix e01 = outer_expect(w, 3, ell, fa12, fa13);
    MatrixCov out{RatMatrix(ell, ell), RatMatrix(ell, ell)};
    for (int r = 0; r < ell; ++r)
        for (int c = 0; c < ell; ++c) {
            Rat mm = mean[std::size_t(r)] * mean[std::size_t(c)];
            out.c0.at(r, c) = e00.at(r, c) - mm;
            out.c1.at(r, c) = e01.at(r, c) - mm;
        }
    return out;
}

namespace {

RatMatrix brute_cov(const WeightedValues& w, int n, int dim,
                    const std::function<std::vector<Rat>(const std::vector<const SurdSum*>&)>& f) {
    std::vector<Rat> mean = expect_tuples(w, n, dim, f);
    RatMatrix second = outer_expect(w, n, dim, f, f);
    RatMatrix out(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            out.at(r, c) = second.at(r, c) - mean[std::size_t(r)] * mean[std::size_t(c)];
    return out;
}

}  // namespace

RatMatrix brute_cov_V(const std::vector<SurdSum>& values, const std::vector<Rat>& probs, int n) {
    const int m = pair_count(n);
    WeightedValues w{values, probs};
    auto f = [&](const std::vector<const SurdSum*>& t) {
        std::vector<Rat> v(static_cast<std::size_t>(m - 1));
        Rat base = square(*t[0] - *t[1]).as_rational();
        int p = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (p > 0)
                    v[std::size_t(p - 1)] = square(*t[std::size_t(i)] - *t[std::size_t(j)]).as_rational() - base;
                ++p;
            }
        return v;
    };
    return brute_cov(w, n, m - 1, f);
}

RatMatrix brute_cov_V_general(const std::vector<SurdSum>& values, const std::vector<Rat>& probs,
                              int n, const SpanEmbedding& emb) {
    const int m = pair_count(n);
    WeightedValues w{values, probs};
    auto f = [&](const std::vector<const SurdSum*>& t) {
        std::vector<SurdSum> xs;
        xs.reserve(t.size());
        for (auto* x : t) xs.push_back(*x);
        return embedded_squared_diff(xs, emb);
    };
    return brute_cov(w, n, (m - 1) * emb.ell, f);
}

Rat det_cov_closed(int n, const Rat& c0, const Rat& c1) {
    const int m = pair_count(n);
    return m * rat_pow(c0 - 2 * c1, m - n) * rat_pow(c0 + (n - 4) * c1, n - 1);
}

Rat det_cov_general_closed(int n, const MatrixCov& c) {
    const int m = pair_count(n);
    const int ell = c.c0.rows();
    if (det_rat(c.c0) == 0) throw std::domain_error("singular C0 block");
    RatMatrix a = c.c0 - c.c1.scaled(2);
    RatMatrix b = c.c0 + c.c1.scaled(n - 4);
    return rat_pow(Rat(m), ell) * rat_pow(det_rat(a), m - n) * rat_pow(det_rat(b), n - 1);
}

Rat structured_det(const Rat& a, const Rat& b, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    return (a + (k - 1) * b) * rat_pow(a - b, k - 1);
}

double ExactConstant::value() const {
    return std::sqrt(rat_to_double(square_rational) * std::pow(M_PI, static_cast<double>(pi_exponent)));
}

ExactConstant binary_constant_squared(int n) {
    const int m = pair_count(n);
    ExactConstant k;
    k.square_rational = rat_pow(Rat(2), 3 * m - 2 * n - 1) / m;
    k.pi_exponent = -(m - 1);
    return k;
}

AsymptoticPrediction asymptotic_constant(const DistributionSpec& dist, int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    dist.validate();
    AsymptoticPrediction out;
    out.n = n;
    out.m = pair_count(n);
    if (dist.degenerate()) {
        out.degenerate = true;
        return out;
    }
    const int m = out.m;
    if (dist.rational_support()) {
        LatticeNormalization norm = normalize_rational(dist);
        out.shift = SurdSum(norm.shift);
        out.scale = norm.scale;
        DistributionSpec nd;
        for (const auto& v : norm.values) nd.support.push_back(SurdSum(Rat(v)));
        nd.probs = norm.probs;
        ScalarCov c = c_constants(nd);
        out.scalar_cov = c;
        out.ell = 1;
        out.exponent = Rat(m - 1, 2);
        out.exponent.canonicalize();
        out.cov_det = det_cov_closed(n, c.c0, c.c1);
        // Volumes via the lattice machinery; the normalized integer support
        // always yields |Lat X1| = 2, |Lat X2| = 1, volume 2^(m-n).
        SpanEmbedding emb = make_span_embedding(nd.support);
        GeneralVolume gv = volume_lat_V_general(nd.support, n, emb);
        out.lat_x1 = gv.lat_x1;
        out.lat_x2 = gv.lat_x2;
        out.lattice_volume = gv.volume;
        if (out.lattice_volume != rat_pow(Rat(2), m - n))
            throw std::logic_error("normalized lattice volume is not 2^(m-n)");
        out.constant.square_rational =
            out.lattice_volume * out.lattice_volume / (rat_pow(Rat(2), m - 1) * out.cov_det);
        out.constant.pi_exponent = -(m - 1);
    } else {
        GeneralNormalization norm = normalize_general(dist);
        out.shift = norm.shift;
        out.scale = 1;
        SpanEmbedding emb = make_span_embedding(norm.values);
        out.ell = emb.ell;
        MatrixCov c = c_matrices(norm.values, norm.probs, emb);
        out.matrix_cov = c;
        out.exponent = Rat(static_cast<long>(emb.ell) * (m - 1), 2);
        out.exponent.canonicalize();
        out.cov_det = det_cov_general_closed(n, c);
        GeneralVolume gv = volume_lat_V_general(norm.values, n, emb);
        out.lat_x1 = gv.lat_x1;
        out.lat_x2 = gv.lat_x2;
        out.lattice_volume = gv.volume;
        out.constant.square_rational =
            out.lattice_volume * out.lattice_volume /
            (rat_pow(Rat(2), emb.ell * (m - 1)) * out.cov_det);
        out.constant.pi_exponent = -static_cast<long>(emb.ell) * (m - 1);
    }
    return out;
}

}  // namespace eqd
