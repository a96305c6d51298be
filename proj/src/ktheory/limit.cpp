#include <algorithm>
#include <sstream>

#include "occ/errors.hpp"
#include "occ/ktheory.hpp"

namespace occ {

namespace {

IntMatrix torsion_relations(const FgAbelianGroup& g) {
    auto mods = g.moduli();
    IntMatrix d(mods.size(), mods.size());
    for (std::size_t i = 0; i < mods.size(); ++i) d(i, i) = mods[i];
    return d;
}

// Image of a hom as an abstract group: Z^k modulo {c : f(c) = 0 in the codomain}.
FgAbelianGroup image_group(const GroupHom& f) {
    std::size_t k = f.domain.generators();
    Kernel ker = kernel(f.matrix.hcat(torsion_relations(f.codomain)));
    IntMatrix rel(k, ker.dim());
    for (std::size_t j = 0; j < ker.dim(); ++j)
        for (std::size_t i = 0; i < k; ++i) rel(i, j) = ker.basis(i, j);
    return cokernel(rel).group;
}

// Subgroup of the codomain generated by the columns, as a lattice containing the relations.
IntMatrix image_lattice(const IntMatrix& cols, const FgAbelianGroup& codomain) {
    return cols.hcat(torsion_relations(codomain));
}

}  // namespace

DirectLimitTrace trace_limit(const std::vector<FgAbelianGroup>& groups, const std::vector<GroupHom>& maps,
                             std::size_t window, std::size_t first_level) {
    if (groups.size() != maps.size() + 1 && !(groups.empty() && maps.empty()))
        throw NotWellDefined("direct system needs one more group than maps");
    for (std::size_t t = 0; t < maps.size(); ++t)
        if (!(maps[t].domain == groups[t]) || !(maps[t].codomain == groups[t + 1]))
            throw NotWellDefined("map " + std::to_string(t) + " does not match its groups");

    DirectLimitTrace tr;
    tr.first_level = first_level;
    tr.groups = groups;
    tr.maps = maps;
    if (window == 0) window = 1;
    // A summand that dies after d steps while a new one is born keeps the lag-1 images
    // from settling; the images of G_t in G_{t+d} for larger d see past it.
    const std::size_t max_lag = std::max<std::size_t>(1, std::min<std::size_t>(window, maps.size()));
    for (std::size_t d = 1; d <= max_lag && !tr.limit; ++d) {
        std::vector<IntMatrix> comp;  // G_t -> G_{t+d}
        std::vector<FgAbelianGroup> images;
        for (std::size_t t = 0; t + d <= maps.size(); ++t) {
            GroupHom f = maps[t];
            for (std::size_t u = 1; u < d; ++u) f = f.then(maps[t + u]);
            comp.push_back(f.matrix);
            images.push_back(image_group(f));
        }
        std::vector<bool> iso;
        for (std::size_t t = 0; t + 1 < comp.size(); ++t) {
            const GroupHom& next = maps[t + d];
            IntMatrix pushed = next.matrix * comp[t];
            bool onto = same_lattice(image_lattice(pushed, next.codomain), image_lattice(comp[t + 1], next.codomain));
            iso.push_back(onto && images[t] == images[t + 1]);
        }
        tr.lag = d;
        tr.images = images;
        tr.image_iso = iso;
        std::size_t run = 0;
        for (std::size_t t = 0; t < iso.size(); ++t) {
            run = iso[t] ? run + 1 : 0;
            if (run == window) {
                std::size_t start = t + 1 - window;
                tr.stable_from = first_level + start;
                tr.limit = images[start];
                break;
            }
        }
    }
    if (!tr.limit && max_lag > 1) {
        // Report the lag-1 data when nothing settles.
        tr.lag = 1;
        tr.images.clear();
        tr.image_iso.clear();
        for (const auto& f : maps) tr.images.push_back(image_group(f));
        for (std::size_t t = 0; t + 1 < maps.size(); ++t) {
            const GroupHom& next = maps[t + 1];
            IntMatrix twice = next.matrix * maps[t].matrix;
            bool onto = same_lattice(image_lattice(twice, next.codomain), image_lattice(next.matrix, next.codomain));
            tr.image_iso.push_back(onto && tr.images[t] == tr.images[t + 1]);
        }
    }
    return tr;
}

std::pair<FgAbelianGroup, DirectLimitTrace> direct_limit(const std::vector<FgAbelianGroup>& groups,
                                                         const std::vector<GroupHom>& maps, std::size_t window,
                                                         std::size_t first_level) {
    DirectLimitTrace tr = trace_limit(groups, maps, window, first_level);
    if (!tr.limit) {
        std::ostringstream os;
        os << "no " << window << " consecutive isomorphisms among " << tr.image_iso.size()
           << " image maps starting at level " << first_level;
        throw NotStabilized(os.str());
    }
    FgAbelianGroup g = *tr.limit;
    return {g, std::move(tr)};
}

KGroups k_groups(const NonnegMatrixSystem& sys, std::size_t window) {
    KGroups out;
    std::size_t n = sys.M.size();
    if (n == 0) return out;
    std::vector<Quotient> q;
    std::vector<Kernel> k;
    for (std::size_t t = 0; t < n; ++t) {
        IntMatrix a = sys.MtminusIt(sys.first_level + t);
        q.push_back(cokernel(a));
        k.push_back(kernel(a));
    }
    std::vector<FgAbelianGroup> g0, g1;
    std::vector<GroupHom> f0, f1;
    for (std::size_t t = 0; t < n; ++t) {
        g0.push_back(q[t].group);
        g1.push_back(FgAbelianGroup::free(k[t].dim()));
    }
    for (std::size_t t = 0; t + 1 < n; ++t) {
        std::size_t l = sys.first_level + t;
        f0.push_back(induced_hom(q[t], q[t + 1], sys.Il(l + 1).transpose()));
        f1.push_back(restricted_hom(k[t], k[t + 1], sys.Il(l).transpose()));
    }
    out.trace0 = trace_limit(g0, f0, window, sys.first_level);
    out.trace1 = trace_limit(g1, f1, window, sys.first_level);
    out.K0 = out.trace0.limit;
    out.K1 = out.trace1.limit;
    return out;
}

BowenFranks bowen_franks(const FgAbelianGroup& k0, const FgAbelianGroup& k1) {
    BowenFranks bf;
    bf.BF0 = direct_sum(k0.torsion_part(), k1.free_part());
    bf.BF1 = direct_sum(k1.torsion_part(), k0.free_part());
    bf.note = "BF0 = tors(K0) + free(K1), BF1 = tors(K1) + free(K0) (universal coefficients)";
    if (k1.trivial() && k0.rank == 1 && k0.torsion.size() <= 1) {
        bf.reference_BF1 = FgAbelianGroup::free(2);
        bf.note += "; for K0 = Z/N + Z, K1 = 0 the reference value of BF1 is Z^2, while the formula gives " +
                   bf.BF1.str();
    }
    return bf;
}

}  // namespace occ
