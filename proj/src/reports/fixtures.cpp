#include <random>
#include <sstream>

#include "occ/errors.hpp"
#include "occ/reports.hpp"

namespace occ {

std::string to_string(Family f) { return f == Family::Reset ? "reset" : "reset-rev"; }

Family family_from_string(const std::string& s) {
    if (s == "reset") return Family::Reset;
    if (s == "reset-rev" || s == "reset_rev") return Family::ResetRev;
    throw UsageError("unknown fixture family '" + s + "' (expected reset or reset-rev)");
}

namespace {

// Fills an r x c matrix from a 1-based entry rule.
template <class F>
IntMatrix tabulate(std::size_t r, std::size_t c, F f) {
    IntMatrix m(r, c);
    for (std::size_t i = 1; i <= r; ++i)
        for (std::size_t j = 1; j <= c; ++j) m(i - 1, j - 1) = f(i, j);
    return m;
}

IntMatrix P_matrix(std::size_t l) {
    return tabulate(2 * l + 2, 2 * l + 2, [&](std::size_t i, std::size_t j) -> long {
        if (i == j) return 1;
        if (j == 1 && i >= 2 && i <= l + 1) return -1;
        return 0;
    });
}

Int floor_div(const Int& a, int n) {
    Int q, b = n;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool in_lattice(const IntMatrix& gens, const IntVec& v) {
    return same_lattice(gens, gens.hcat(IntMatrix::from_columns(gens.rows(), {v})));
}

IntVec unit(std::size_t n, std::size_t k) {
    IntVec e(n);
    e[k] = 1;
    return e;
}

std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

}  // namespace

FixtureBundle closed_form_fixtures(Family fam, int N, std::size_t l) {
    if (l < 2) throw UnsupportedLevel("closed forms are stated for l >= 2, got l = " + std::to_string(l));
    if (N < 1) throw UnsupportedLevel("N must be >= 1");
    const std::size_t R = 2 * l + 4, C = 2 * l + 2;
    const bool rev = fam == Family::ResetRev;
    FixtureBundle b;
    b.family = fam;
    b.N = N;
    b.l = l;
    b.MtminusIt = tabulate(R, C, [&](std::size_t i, std::size_t j) -> long {
        long v = 0;
        if (rev ? (j == l + 2 && i <= l + 2) : (i == l + 2 && j == l + 2)) v += N;
        if (i >= 2 && i == j && i <= 2 * l + 2 && i != l + 2) v += 1;
        if (i + j == 2 * l + 5 && j <= l + 1) v += 1;
        if (i >= 2 && i == j + 1 && i <= 2 * l + 2) v -= 1;
        return v;
    });
    b.B = tabulate(R, C, [&](std::size_t i, std::size_t j) -> long {
        long v = 0;
        if (rev ? (j == l + 2 && i == 1) : (i == l + 2 && j == l + 2)) v += N;
        if (i >= 2 && i == j && i <= 2 * l + 2 && i != l + 2) v += 1;
        if ((i == 2 * l + 4 && j == 1) || (i == 2 * l + 3 && j == 2)) v += 1;
        if (rev ? (i >= 2 && i == j + 1 && i <= l + 2) : (i == 2 && j == 1)) v -= 1;
        return v;
    });
    b.P = P_matrix(l + 1);
    b.Pprev = P_matrix(l);
    b.It = tabulate(R, C, [&](std::size_t i, std::size_t j) -> long {
        // I_{l,l+1}(j, i): 1 if j = i = 1, 2 <= i = j + 1 <= 2l+3, or (j, i) = (2l+2, 2l+4)
        return (i == 1 && j == 1) || (i == j + 1 && i >= 2 && i <= 2 * l + 3) || (j == 2 * l + 2 && i == 2 * l + 4);
    });
    b.J_printed = tabulate(R, C, [&](std::size_t i, std::size_t j) -> long {
        return (i == 1 && j == 1) || (i + 1 == j && i >= 2 && i <= 2 * l + 3) || (i == 2 * l + 4 && j == 2 * l + 2);
    });
    b.J = tabulate(R, C, [&](std::size_t i, std::size_t j) -> long {
        return (i == 1 && j == 1) || (i == j + 1 && i >= 3 && i <= 2 * l + 3) || (i == 2 * l + 4 && j == 2 * l + 2);
    });
    b.L = IntMatrix{{1, 0, 0}, {0, 0, 0}, {0, 1, 1}};
    return b;
}

XiValue xi(int N, std::size_t l, const IntVec& z) {
    auto Z = [&](std::size_t k) -> const Int& { return z.at(k - 1); };
    XiValue v;
    Int n = N;
    mpz_fdiv_r(v.r.get_mpz_t(), Z(1).get_mpz_t(), n.get_mpz_t());
    v.phi = Z(2) - Z(2 * l + 3) + Z(2 * l + 4);
    v.psi = Z(2 * l + 3);
    for (std::size_t k = 3; k <= l + 2; ++k) v.psi += Z(k);
    return v;
}

IntVec xi_preimage(int N, std::size_t l, const IntVec& z) {
    auto Z = [&](std::size_t k) -> const Int& { return z.at(k - 1); };
    IntVec x(2 * l + 2);
    auto X = [&](std::size_t k) -> Int& { return x.at(k - 1); };
    for (std::size_t k = l + 3; k <= 2 * l + 2; ++k) X(k) = Z(k);
    X(l + 2) = floor_div(Z(1), N);
    X(l + 1) = -Z(l + 2);
    X(l) = -Z(l + 1) - Z(l + 2);
    for (std::size_t k = 1; k + 3 <= l; ++k) {
        Int s = 0;
        for (std::size_t t = l - k + 1; t <= l + 2; ++t) s += Z(t);
        X(l - k) = -s;
    }
    X(1) = Z(2 * l + 4);
    X(2) = Z(2 * l + 3);
    return x;
}

bool CrosscheckReport::passed() const {
    for (const auto& i : items)
        if (i.applicable && !i.passed) return false;
    return true;
}

LambdaGraphSystem fixture_graph(Family fam, int N, std::size_t L, const Config& cfg) {
    if (fam == Family::ResetRev)
        return build(SubshiftOracle(CodeSpec::reversed(CodeSpec::reset(N))), Direction::Past, L, cfg);
    return build(SubshiftOracle(CodeSpec::reset(N)), Direction::Past, L, cfg);
}

CrosscheckReport crosscheck_items(Family fam, int N, std::size_t l, const Config& cfg,
                                  const NonnegMatrixSystem* builder) {
    auto fx = closed_form_fixtures(fam, N, l);
    const bool rev = fam == Family::ResetRev;
    CrosscheckReport rep;
    rep.family = fam;
    rep.N = N;
    rep.l = l;
    auto add = [&](std::string name, bool ok, std::string detail, bool applicable = true) {
        rep.items.push_back({std::move(name), ok, applicable, std::move(detail)});
    };

    add("lattice", same_lattice(fx.P * fx.MtminusIt, fx.B), "P_{l+1}(M^t-I^t) and B span the same column lattice");

    {
        std::string bad;
        for (std::size_t k = 0; k < 2 * l + 2 && bad.empty(); ++k) {
            IntVec e = unit(2 * l + 2, k);
            IntVec lhs = fx.P.apply(fx.It.apply(e)), rhs = fx.J.apply(fx.Pprev.apply(e));
            IntVec d(lhs.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = lhs[i] - rhs[i];
            if (!in_lattice(fx.B, d)) bad = "generator " + std::to_string(k + 1) + ": difference " + vec_str(d);
        }
        add("square", bad.empty(), bad.empty() ? "P_{l+1} I^t = J P_l modulo B on every generator" : bad);
    }

    {
        IntMatrix Pinv = fx.Pprev;
        for (std::size_t i = 1; i < Pinv.rows(); ++i) Pinv(i, 0) = -Pinv(i, 0);
        IntMatrix exact = fx.P * fx.It * Pinv;
        bool printed_fails = false;
        for (std::size_t k = 0; k < 2 * l + 2 && !printed_fails; ++k) {
            IntVec e = unit(2 * l + 2, k);
            IntVec lhs = exact.apply(e), rhs = fx.J_printed.apply(e);
            IntVec d(lhs.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = lhs[i] - rhs[i];
            printed_fails = !in_lattice(fx.B, d);
        }
        add("J-index", printed_fails && exact == fx.J,
            "J as printed does not commute with the square; J(i,j) = 1 for i = j+1 (3 <= i <= 2l+3) equals "
            "P_{l+1} I^t P_l^{-1} exactly");
    }

    std::mt19937_64 rng(cfg.seed + 1000003 * l + 101 * N + (rev ? 7 : 0));
    std::uniform_int_distribution<long> coord(-40, 40);
    if (rev) {
        std::string bad;
        for (int t = 0; t < 100 && bad.empty(); ++t) {
            IntVec z(2 * l + 4);
            for (auto& c : z) c = coord(rng);
            auto v = xi(N, l, z);
            IntVec rec = fx.B.apply(xi_preimage(N, l, z));
            rec[0] += v.r;
            rec[1] += v.phi;
            rec[2] += v.psi;
            if (rec != z) bad = "z = " + vec_str(z) + " rebuilt as " + vec_str(rec);
        }
        for (int t = 0; t < 20 && bad.empty(); ++t) {
            IntVec z(2 * l + 4);
            z[0] = std::uniform_int_distribution<int>(0, N - 1)(rng);
            z[1] = coord(rng);
            z[2] = coord(rng);
            if (xi(N, l, z) != XiValue{z[0], z[1], z[2]}) bad = "xi" + vec_str(z) + " is not (g,m,k)";
        }
        for (std::size_t j = 0; j < 2 * l + 2 && bad.empty(); ++j)
            if (xi(N, l, fx.B.column(j)) != XiValue{0, 0, 0}) bad = "xi does not vanish on column " + std::to_string(j + 1) + " of B";
        add("decomposition", bad.empty(), bad.empty() ? "z = Bx + (r,phi,psi,0,...,0) on 100 seeded vectors" : bad);

        bad.clear();
        for (int t = 0; t < 100 && bad.empty(); ++t) {
            IntVec z(2 * l + 2);
            for (auto& c : z) c = coord(rng);
            auto before = xi(N, l - 1, z), after = xi(N, l, fx.J.apply(z));
            XiValue want{before.r, 0, before.phi + before.psi};
            if (after != want) bad = "z = " + vec_str(z);
        }
        add("L-conjugacy", bad.empty(), bad.empty() ? "xi_{l+1} J = L xi_l on 100 seeded vectors" : bad);
    } else {
        add("decomposition", false, "no closed-form coordinates are given for this family", false);
        add("L-conjugacy", false, "no closed-form coordinates are given for this family", false);
    }

    add("kernel", kernel_basis(fx.MtminusIt).empty(), "Ker(M^t - I^t) = 0");
    auto expect = FgAbelianGroup::from_cyclic({N, 0, 0});
    auto ck = cokernel(fx.MtminusIt).group;
    add("cokernel", ck == expect && cokernel(fx.B).group == expect,
        "coker(M^t-I^t) = " + ck.str() + ", expected " + expect.str());

    std::optional<NonnegMatrixSystem> own;
    if (!builder) {
        own = matrix_systems(fixture_graph(fam, N, l + 1, cfg)).nonneg;
        builder = &*own;
    }
    IntMatrix got = builder->MtminusIt(l);
    if (rev) {
        add("builder", got == fx.MtminusIt, got == fx.MtminusIt ? "entrywise equal" : "builder matrix differs: " + got.str());
    } else {
        // The builder's vertex order for this family is not the closed-form one; compare order-free data.
        bool ok = got.rows() == fx.MtminusIt.rows() && got.cols() == fx.MtminusIt.cols() &&
                  cokernel(got).group == cokernel(fx.MtminusIt).group;
        add("builder", ok, "shape and cokernel compared (entrywise order not available)");
    }
    return rep;
}

CrosscheckReport fixture_crosscheck(Family fam, int N, std::size_t l, const Config& cfg,
                                    const NonnegMatrixSystem* builder) {
    auto rep = crosscheck_items(fam, N, l, cfg, builder);
    for (const auto& i : rep.items)
        if (i.applicable && !i.passed)
            throw CrosscheckFailure(to_string(fam) + ", N=" + std::to_string(N) + ", l=" + std::to_string(l) + ", " +
                                    i.name + ": " + i.detail);
    return rep;
}

}  // namespace occ
