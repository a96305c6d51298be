#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "occ/intmatrix.hpp"

namespace occ {

// A = U * S * V with U, V unimodular; P = U^-1 and Q = V^-1 satisfy P*A*Q = S.
struct SmithForm {
    IntMatrix U, S, V;
    IntMatrix P, Q;
    std::vector<Int> diag;  // min(rows, cols) entries, d1 | d2 | ..., zeros trail
    std::size_t rank() const;
};

SmithForm smith_form(const IntMatrix& a);

// Canonical finitely generated abelian group Z^rank + sum Z/d_i, d_1 | d_2 | ..., d_i >= 2.
struct FgAbelianGroup {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    // Canonicalizes any list of cyclic orders (0 = infinite cyclic, 1 = trivial).
    static FgAbelianGroup from_cyclic(const std::vector<Int>& orders);
    static FgAbelianGroup free(std::size_t r) { return {r, {}}; }

    std::size_t generators() const { return torsion.size() + rank; }
    // Order of each canonical generator; 0 for free generators.
    std::vector<Int> moduli() const;
    FgAbelianGroup torsion_part() const { return {0, torsion}; }
    FgAbelianGroup free_part() const { return {rank, {}}; }
    bool trivial() const { return rank == 0 && torsion.empty(); }

    std::string str() const;  // e.g. "Z/2 + Z^2", "0"
    friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;
};

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);

// Z^ambient / (column span of relations), with coordinates for the canonical generators.
struct Quotient {
    IntMatrix relations;
    FgAbelianGroup group;
    IntMatrix P, Pinv;             // P maps ambient coordinates to Smith coordinates
    std::vector<std::size_t> idx;  // Smith coordinate carried by each canonical generator
    std::vector<Int> moduli;

    std::size_t ambient() const { return relations.rows(); }
    IntVec project(const IntVec& v) const;  // canonical coordinates, torsion reduced
    IntVec lift(std::size_t gen) const;     // ambient representative of a generator
};

Quotient cokernel(const IntMatrix& a);

// Saturated lattice {x : A x = 0}.
struct Kernel {
    IntMatrix matrix;  // the map whose kernel this is
    IntMatrix basis;   // columns form a lattice basis
    IntMatrix coord;   // coord * x gives basis coordinates of x in the kernel
    std::size_t dim() const { return basis.cols(); }
    IntVec coordinates(const IntVec& x) const;
};

Kernel kernel(const IntMatrix& a);
std::vector<IntVec> kernel_basis(const IntMatrix& a);

// Homomorphism in canonical generator coordinates; column j is the image of generator j.
struct GroupHom {
    FgAbelianGroup domain, codomain;
    IntMatrix matrix;

    IntVec apply(const IntVec& x) const;
    GroupHom then(const GroupHom& next) const;  // next after this
    static GroupHom identity(const FgAbelianGroup& g);
};

// Map of quotients induced by an ambient map F; NotWellDefined if F does not carry
// relations into relations.
GroupHom induced_hom(const Quotient& from, const Quotient& to, const IntMatrix& f);
// Restriction of F to kernels; NotWellDefined if F leaves the target kernel.
GroupHom restricted_hom(const Kernel& from, const Kernel& to, const IntMatrix& f);

// Canonical Hermite basis of the lattice spanned by the columns of gens.
IntMatrix hermite_basis(const IntMatrix& gens);
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

struct DirectLimitTrace {
    std::size_t first_level = 0;
    std::vector<FgAbelianGroup> groups;  // G_l
    std::vector<GroupHom> maps;          // G_l -> G_{l+1}
    std::size_t lag = 1;                 // images are taken d = lag steps ahead
    std::vector<FgAbelianGroup> images;  // J_l = image of G_l in G_{l+d}
    std::vector<bool> image_iso;         // J_l -> J_{l+1} is an isomorphism
    std::optional<std::size_t> stable_from;
    std::optional<FgAbelianGroup> limit;
};

// Scans the system for `window` consecutive image maps that are isomorphisms, taking
// images d = 1, 2, ..., window steps ahead until one lag settles.
DirectLimitTrace trace_limit(const std::vector<FgAbelianGroup>& groups,
                             const std::vector<GroupHom>& maps, std::size_t window,
                             std::size_t first_level = 0);
// As trace_limit but throws NotStabilized when no limit is certified.
std::pair<FgAbelianGroup, DirectLimitTrace> direct_limit(const std::vector<FgAbelianGroup>& groups,
                                                         const std::vector<GroupHom>& maps,
                                                         std::size_t window,
                                                         std::size_t first_level = 0);

// Integer matrices M_{l,l+1}, I_{l,l+1} for l = first_level, first_level+1, ...
struct NonnegMatrixSystem {
    std::size_t first_level = 0;
    std::vector<IntMatrix> M, I;
    std::vector<std::size_t> m;  // m(l) for l = first_level .. first_level + M.size()

    std::size_t last_level() const { return first_level + M.size(); }
    const IntMatrix& Ml(std::size_t l) const { return M.at(l - first_level); }
    const IntMatrix& Il(std::size_t l) const { return I.at(l - first_level); }
    IntMatrix MtminusIt(std::size_t l) const { return Ml(l).transpose() - Il(l).transpose(); }
};

struct KGroups {
    std::optional<FgAbelianGroup> K0, K1;
    DirectLimitTrace trace0, trace1;
    bool resolved() const { return K0 && K1; }
};

KGroups k_groups(const NonnegMatrixSystem& sys, std::size_t window);

struct BowenFranks {
    FgAbelianGroup BF0, BF1;
    std::string note;
    std::optional<FgAbelianGroup> reference_BF1;  // externally quoted value when it disagrees
};

BowenFranks bowen_franks(const FgAbelianGroup& k0, const FgAbelianGroup& k1);

}  // namespace occ
