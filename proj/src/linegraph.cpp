#include "eqd/linegraph.hpp"

#include "eqd/overlap.hpp"

namespace eqd {

IntMatrix linegraph_adjacency(int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    auto pairs = all_pairs(n);
    const int m = static_cast<int>(pairs.size());
    IntMatrix a(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            if (p == q) continue;
            int shared = (pairs[std::size_t(p)].i == pairs[std::size_t(q)].i) +
                         (pairs[std::size_t(p)].i == pairs[std::size_t(q)].j) +
                         (pairs[std::size_t(p)].j == pairs[std::size_t(q)].i) +
                         (pairs[std::size_t(p)].j == pairs[std::size_t(q)].j);
            if (shared == 1) a.at(p, q) = 1;
        }
    return a;
}

IntMatrix incidence_matrix(int n) {
    auto pairs = all_pairs(n);
    IntMatrix m(n, static_cast<int>(pairs.size()));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        m.at(pairs[p].i - 1, static_cast<int>(p)) = 1;
        m.at(pairs[p].j - 1, static_cast<int>(p)) = 1;
    }
    return m;
}

std::vector<BigInt> even_cycle_vector(const std::vector<int>& cycle, int n) {
    if (cycle.size() < 4 || cycle.size() % 2 != 0)
        throw std::invalid_argument("cycle must have even length >= 4");
    std::vector<BigInt> v(static_cast<std::size_t>(pair_count(n)));
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        int a = cycle[k], b = cycle[(k + 1) % cycle.size()];
        if (a == b) throw std::invalid_argument("consecutive cycle vertices must differ");
        int p = pair_flat(std::min(a, b), std::max(a, b), n);
        v[static_cast<std::size_t>(p)] += (k % 2 == 0) ? 1 : -1;
    }
    return v;
}

RatMatrix even_cycle_basis(int n) {
    if (n < 4) throw std::invalid_argument("n must be at least 4");
    const int m = pair_count(n);
    RatMatrix b(0, m);
    // Fundamental cycles of the star tree at vertex 1 are the triangles
    // (1, i, j); all odd, so splice each against the reference (1, 2, 3)
    // through the shared vertex 1 into a closed walk of length 6.
    for (int i = 2; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (i == 2 && j == 3) continue;
            std::vector<int> walk = {1, 2, 3, 1, i, j};
            auto v = even_cycle_vector(walk, n);
            std::vector<Rat> row(static_cast<std::size_t>(m));
            for (int c = 0; c < m; ++c) row[std::size_t(c)] = Rat(v[std::size_t(c)]);
            b.append_row(row);
        }
    return b;
}

RatMatrix even_cycle_basis_e12(int n) {
    RatMatrix spliced = even_cycle_basis(n);
    const int m = pair_count(n);
    std::vector<Rat> head(static_cast<std::size_t>(m));
    {
        auto v0 = even_cycle_vector({1, 2, 3, 4}, n);
        for (int c = 0; c < m; ++c) head[std::size_t(c)] = Rat(v0[std::size_t(c)]);
    }
    const int e12 = pair_flat(1, 2, n);
    if (head[std::size_t(e12)] == 0) throw std::logic_error("head vector misses e_{1,2}");
    RatMatrix out(0, m);
    out.append_row(head);
    RatMatrix candidates(0, m);
    for (int r = 0; r < spliced.rows(); ++r) {
        auto row = spliced.row(r);
        Rat f = row[std::size_t(e12)] / head[std::size_t(e12)];
        if (f != 0)
            for (int c = 0; c < m; ++c) row[std::size_t(c)] -= f * head[std::size_t(c)];
        candidates.append_row(row);
    }
    // Keep an independent subset of the e12-free candidates.
    Echelon e = reduced_row_echelon(candidates);
    for (int r = 0; r < e.reduced.rows(); ++r) out.append_row(e.reduced.row(r));
    if (out.rows() != pair_count(n) - n) throw std::logic_error("eigenbasis rank mismatch");
    return out;
}

std::vector<EigenComponent> eigen_structure(int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    const int m = pair_count(n);
    IntMatrix adj = linegraph_adjacency(n);
    RatMatrix a = RatMatrix::from_int(adj);

    auto verify = [&](const RatMatrix& basis, const BigInt& lambda) {
        for (int r = 0; r < basis.rows(); ++r) {
            auto v = basis.row(r);
            auto av = mat_vec(a, v);
            for (int c = 0; c < m; ++c)
                if (av[std::size_t(c)] != Rat(lambda) * v[std::size_t(c)]) return false;
        }
        return rank_rat(basis) == basis.rows();
    };

    std::vector<EigenComponent> out;

    EigenComponent ones;
    ones.eigenvalue = 2 * n - 4;
    ones.multiplicity = 1;
    ones.basis = RatMatrix(1, m);
    for (int c = 0; c < m; ++c) ones.basis.at(0, c) = 1;
    ones.verified = verify(ones.basis, ones.eigenvalue);
    out.push_back(std::move(ones));

    EigenComponent mid;
    mid.eigenvalue = n - 4;
    mid.multiplicity = n - 1;
    mid.basis = RatMatrix(0, m);
    for (int i = 2; i <= n; ++i) {
        auto h = overlap_vector(1u << (i - 1), n);
        std::vector<Rat> row(static_cast<std::size_t>(m));
        for (int c = 0; c < m; ++c) row[std::size_t(c)] = Rat(h[std::size_t(c)]) - Rat(2, n);
        mid.basis.append_row(row);
    }
    mid.verified = verify(mid.basis, mid.eigenvalue);
    out.push_back(std::move(mid));

    EigenComponent neg;
    neg.eigenvalue = -2;
    neg.multiplicity = m - n;
    neg.basis = n >= 4 ? even_cycle_basis(n) : RatMatrix(0, m);
    neg.verified = n >= 4 ? verify(neg.basis, neg.eigenvalue) : true;
    out.push_back(std::move(neg));

    return out;
}

}  // namespace eqd
