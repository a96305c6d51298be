#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "occ/errors.hpp"
#include "occ/ktheory.hpp"

using namespace occ;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Product of random elementary matrices: unimodular by construction.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> k(-3, 3);
    for (int s = 0; s < 3 * static_cast<int>(n); ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        u.add_row(i, j, k(rng));
        if (s % 5 == 0) u.swap_rows(i, j);
    }
    return u;
}

Int gcd_of_minors(const IntMatrix& a, std::size_t k) {
    std::vector<std::size_t> rs(k), cs(k);
    Int g = 0;
    std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            IntMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rs[i], cs[j]);
            Int d = determinant(m);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
        }
        for (std::size_t c = start; c < a.cols(); ++c) {
            cs[depth] = c;
            pick_cols(c + 1, depth + 1);
        }
    };
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            pick_cols(0, 0);
            return;
        }
        for (std::size_t r = start; r < a.rows(); ++r) {
            rs[depth] = r;
            pick_rows(r + 1, depth + 1);
        }
    };
    pick_rows(0, 0);
    return g;
}

bool is_diagonal(const IntMatrix& s) {
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (i != j && sgn(s(i, j)) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith form of small fixed matrices") {
    SmithForm id = smith_form(IntMatrix::identity(3));
    CHECK(id.S == IntMatrix::identity(3));

    SmithForm d = smith_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(d.diag == std::vector<Int>{1, 6});
    CHECK(d.U * d.S * d.V == (IntMatrix{{2, 0}, {0, 3}}));
    CHECK(abs(determinant(d.U)) == 1);
    CHECK(abs(determinant(d.V)) == 1);

    CHECK(smith_form(IntMatrix{{3}}).S == IntMatrix{{3}});
}

TEST_CASE("smith form on 200 seeded random matrices") {
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix a = random_matrix(rng, r, c);
        if (trial % 7 == 0) a = random_matrix(rng, r, 1) * random_matrix(rng, 1, c);  // rank one
        SmithForm s = smith_form(a);
        REQUIRE(s.U * s.S * s.V == a);
        REQUIRE(s.P * a * s.Q == s.S);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        CHECK(is_diagonal(s.S));
        for (std::size_t t = 0; t + 1 < s.diag.size(); ++t) {
            CHECK(sgn(s.diag[t]) >= 0);
            if (sgn(s.diag[t]) == 0) CHECK(sgn(s.diag[t + 1]) == 0);
            else CHECK(mpz_divisible_p(s.diag[t + 1].get_mpz_t(), s.diag[t].get_mpz_t()));
        }
        // Independent oracle: d1*...*dk equals the gcd of the k-minors.
        if (std::max(r, c) <= 5) {
            Int prod = 1;
            for (std::size_t k = 1; k <= s.diag.size(); ++k) {
                prod *= s.diag[k - 1];
                CHECK(prod == gcd_of_minors(a, k));
            }
        }
    }
}

TEST_CASE("cokernel is invariant under unimodular changes of basis") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix a = random_matrix(rng, r, c, -4, 4);
        IntMatrix b = random_unimodular(rng, r) * a * random_unimodular(rng, c);
        CHECK(cokernel(a).group == cokernel(b).group);
    }
}

TEST_CASE("cokernel examples") {
    CHECK(cokernel(IntMatrix{{3}}).group == FgAbelianGroup{0, {3}});
    CHECK(cokernel(IntMatrix(2, 2)).group == FgAbelianGroup::free(2));
    CHECK(cokernel(IntMatrix(2, 0)).group == FgAbelianGroup::free(2));
    Quotient q = cokernel(IntMatrix{{2, 0}, {0, 3}});
    CHECK(q.group == FgAbelianGroup{0, {6}});
    CHECK(q.project(IntVec{2, 0}) == IntVec{0});
    CHECK(q.project(IntVec{0, 3}) == IntVec{0});
    CHECK(q.project(q.lift(0)) == IntVec{1});
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(IntMatrix{{3}}).empty());
    CHECK(kernel_basis(IntMatrix(2, 2)).size() == 2);
    auto k = kernel_basis(IntMatrix{{2, -2}});
    REQUIRE(k.size() == 1);
    CHECK(abs(k[0][0]) == 1);
    CHECK(k[0][0] == k[0][1]);

    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix a = random_matrix(rng, r, c, -3, 3);
        if (trial % 3 == 0) a = random_matrix(rng, r, 2, -3, 3) * random_matrix(rng, 2, c, -3, 3);
        Kernel ker = kernel(a);
        CHECK((a * ker.basis).is_zero());
        CHECK(ker.dim() + smith_form(a).rank() == c);
        for (std::size_t j = 0; j < ker.dim(); ++j) {
            IntVec e(ker.dim());
            e[j] = 1;
            CHECK(ker.coordinates(ker.basis.column(j)) == e);
        }
    }
}

TEST_CASE("induced homomorphisms") {
    Quotient g = cokernel(IntMatrix{{2, 0}, {0, 0}});
    GroupHom id = induced_hom(g, g, IntMatrix::identity(2));
    CHECK(id.matrix == GroupHom::identity(g.group).matrix);

    Quotient z = cokernel(IntMatrix(1, 0));
    Quotient z2 = cokernel(IntMatrix{{2}});
    GroupHom red = induced_hom(z, z2, IntMatrix{{1}});
    CHECK(red.codomain == FgAbelianGroup{0, {2}});
    CHECK(red.apply(IntVec{1}) == IntVec{1});
    CHECK(red.apply(IntVec{2}) == IntVec{0});

    Quotient z3 = cokernel(IntMatrix{{3}});
    CHECK_THROWS_AS(induced_hom(z2, z3, IntMatrix{{1}}), NotWellDefined);
}

TEST_CASE("functoriality of induced maps") {
    Quotient a = cokernel(IntMatrix{{4, 0}, {0, 0}});
    Quotient b = cokernel(IntMatrix{{2, 0}, {0, 0}});
    Quotient c = cokernel(IntMatrix{{2}});
    IntMatrix f{{1, 1}, {0, 3}}, g{{1, 1}};
    GroupHom h1 = induced_hom(a, b, f), h2 = induced_hom(b, c, g);
    GroupHom direct = induced_hom(a, c, g * f);
    CHECK(h1.then(h2).matrix == direct.matrix);
}

TEST_CASE("hermite basis decides lattice equality") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = random_matrix(rng, 4, 3, -5, 5);
        IntMatrix b = a * random_unimodular(rng, 3);
        CHECK(same_lattice(a, b));
        IntMatrix twice = a;
        for (std::size_t i = 0; i < 4; ++i) twice(i, 0) *= 2;
        CHECK(same_lattice(a.hcat(twice), a));
    }
    CHECK_FALSE(same_lattice(IntMatrix{{2}}, IntMatrix{{1}}));
    CHECK_FALSE(same_lattice(IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{2, 0}, {0, 1}}));
    CHECK(same_lattice(IntMatrix{{2, 3}}, IntMatrix{{1}}));
}

TEST_CASE("direct limits") {
    SUBCASE("L map on Z/N + Z + Z") {
        for (int n = 1; n <= 4; ++n) {
            std::vector<Int> mods{Int(n), 0, 0};
            FgAbelianGroup g = FgAbelianGroup::from_cyclic(mods);
            // generators in the order (Z/N, Z, Z); for n = 1 the torsion generator vanishes
            IntMatrix l = n > 1 ? IntMatrix{{1, 0, 0}, {0, 0, 0}, {0, 1, 1}} : IntMatrix{{0, 0}, {1, 1}};
            std::vector<FgAbelianGroup> gs(6, g);
            std::vector<GroupHom> fs(5, GroupHom{g, g, l});
            auto [lim, tr] = direct_limit(gs, fs, 3, 2);
            CHECK(lim == FgAbelianGroup::from_cyclic({Int(n), 0}));
            CHECK(tr.stable_from == std::optional<std::size_t>(2));
        }
    }
    SUBCASE("identity maps") {
        FgAbelianGroup g{1, {2, 4}};
        std::vector<FgAbelianGroup> gs(5, g);
        std::vector<GroupHom> fs(4, GroupHom::identity(g));
        CHECK(direct_limit(gs, fs, 3).first == g);
    }
    SUBCASE("doubling on Z never stabilizes") {
        FgAbelianGroup z = FgAbelianGroup::free(1);
        std::vector<FgAbelianGroup> gs(10, z);
        std::vector<GroupHom> fs(9, GroupHom{z, z, IntMatrix{{2}}});
        CHECK_THROWS_AS(direct_limit(gs, fs, 3), NotStabilized);
        CHECK_FALSE(trace_limit(gs, fs, 3).stable_from.has_value());
    }
    SUBCASE("a summand that dies one step later needs lag two") {
        FgAbelianGroup z3 = FgAbelianGroup::free(3);
        std::vector<FgAbelianGroup> gs(8, z3);
        std::vector<GroupHom> fs(7, GroupHom{z3, z3, IntMatrix{{1, 0, 0}, {0, 0, 0}, {0, 1, 0}}});
        CHECK_FALSE(trace_limit(gs, fs, 1).image_iso.at(0));
        auto [lim, tr] = direct_limit(gs, fs, 3);
        CHECK(lim == FgAbelianGroup::free(1));
        CHECK(tr.lag == 2);
    }
    SUBCASE("zero maps give the trivial limit") {
        FgAbelianGroup z = FgAbelianGroup::free(1);
        std::vector<FgAbelianGroup> gs(6, z);
        std::vector<GroupHom> fs(5, GroupHom{z, z, IntMatrix{{0}}});
        CHECK(direct_limit(gs, fs, 3).first.trivial());
    }
}

TEST_CASE("k-groups of a full shift") {
    NonnegMatrixSystem sys;
    sys.first_level = 1;
    for (int l = 0; l < 8; ++l) {
        sys.M.push_back(IntMatrix{{3}});
        sys.I.push_back(IntMatrix{{1}});
        sys.m.push_back(1);
    }
    sys.m.push_back(1);
    KGroups k = k_groups(sys, 3);
    REQUIRE(k.resolved());
    CHECK(*k.K0 == FgAbelianGroup{0, {2}});
    CHECK(k.K1->trivial());
}

TEST_CASE("bowen-franks arithmetic") {
    for (int n = 2; n <= 4; ++n) {
        BowenFranks bf = bowen_franks(FgAbelianGroup{2, {Int(n)}}, FgAbelianGroup::free(1));
        CHECK(bf.BF0 == FgAbelianGroup{1, {Int(n)}});
        CHECK(bf.BF1 == FgAbelianGroup::free(2));
        CHECK_FALSE(bf.reference_BF1.has_value());

        BowenFranks r = bowen_franks(FgAbelianGroup{1, {Int(n)}}, FgAbelianGroup{});
        CHECK(r.BF0 == FgAbelianGroup{0, {Int(n)}});
        CHECK(r.BF1 == FgAbelianGroup::free(1));
        REQUIRE(r.reference_BF1.has_value());
        CHECK(*r.reference_BF1 == FgAbelianGroup::free(2));
    }
    BowenFranks t = bowen_franks(FgAbelianGroup{}, FgAbelianGroup{});
    CHECK(t.BF0.trivial());
    CHECK(t.BF1.trivial());
}

TEST_CASE("group canonical form and printing") {
    CHECK(FgAbelianGroup::from_cyclic({2, 3, 0, 1}) == FgAbelianGroup{1, {6}});
    CHECK(FgAbelianGroup::from_cyclic({2, 4}).str() == "Z/2 + Z/4");
    CHECK(FgAbelianGroup{2, {3}}.str() == "Z/3 + Z^2");
    CHECK(FgAbelianGroup{}.str() == "0");
}
