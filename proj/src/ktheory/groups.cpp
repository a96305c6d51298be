#include <algorithm>
#include <sstream>

#include "occ/errors.hpp"
#include "occ/ktheory.hpp"

namespace occ {

namespace {

Int residue(const Int& v, const Int& mod) {
    if (sgn(mod) == 0) return v;
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return r;
}

IntVec reduce(IntVec v, const std::vector<Int>& moduli) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = residue(v[i], moduli[i]);
    return v;
}

bool all_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

}  // namespace

FgAbelianGroup FgAbelianGroup::from_cyclic(const std::vector<Int>& orders) {
    IntMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = abs(orders[i]);
    SmithForm s = smith_form(d);
    FgAbelianGroup g;
    for (const auto& x : s.diag) {
        if (sgn(x) == 0)
            ++g.rank;
        else if (x > 1)
            g.torsion.push_back(x);
    }
    return g;
}

std::vector<Int> FgAbelianGroup::moduli() const {
    std::vector<Int> m = torsion;
    m.resize(torsion.size() + rank, Int(0));
    return m;
}

std::string FgAbelianGroup::str() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    if (rank > 0) {
        os << (first ? "" : " + ") << "Z";
        if (rank > 1) os << '^' << rank;
    }
    return os.str();
}

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    std::vector<Int> orders = a.moduli();
    for (const auto& x : b.moduli()) orders.push_back(x);
    return FgAbelianGroup::from_cyclic(orders);
}

IntVec Quotient::project(const IntVec& v) const {
    IntVec w = P.apply(v);
    IntVec out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = residue(w[idx[k]], moduli[k]);
    return out;
}

IntVec Quotient::lift(std::size_t gen) const { return Pinv.column(idx.at(gen)); }

Quotient cokernel(const IntMatrix& a) {
    SmithForm s = smith_form(a);
    Quotient q;
    q.relations = a;
    std::size_t m = a.rows();
    std::vector<std::size_t> free;
    for (std::size_t t = 0; t < m; ++t) {
        Int d = t < s.diag.size() ? s.diag[t] : Int(0);
        if (sgn(d) == 0)
            free.push_back(t);
        else if (d > 1) {
            q.idx.push_back(t);
            q.moduli.push_back(d);
            q.group.torsion.push_back(d);
        }
    }
    for (std::size_t t : free) {
        q.idx.push_back(t);
        q.moduli.emplace_back(0);
    }
    q.group.rank = free.size();
    q.P = std::move(s.P);
    q.Pinv = std::move(s.U);
    return q;
}

IntVec Kernel::coordinates(const IntVec& x) const { return coord.apply(x); }

Kernel kernel(const IntMatrix& a) {
    SmithForm s = smith_form(a);
    std::size_t r = s.rank(), n = a.cols();
    Kernel k;
    k.matrix = a;
    k.basis = IntMatrix(n, n - r);
    k.coord = IntMatrix(n - r, n);
    for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            k.basis(i, j - r) = s.Q(i, j);
            k.coord(j - r, i) = s.V(j, i);
        }
    return k;
}

std::vector<IntVec> kernel_basis(const IntMatrix& a) {
    Kernel k = kernel(a);
    std::vector<IntVec> out;
    for (std::size_t j = 0; j < k.dim(); ++j) out.push_back(k.basis.column(j));
    return out;
}

IntVec GroupHom::apply(const IntVec& x) const { return reduce(matrix.apply(x), codomain.moduli()); }

GroupHom GroupHom::then(const GroupHom& next) const {
    if (!(next.domain == codomain)) throw NotWellDefined("composition of incompatible maps");
    GroupHom h{domain, next.codomain, next.matrix * matrix};
    auto mods = h.codomain.moduli();
    for (std::size_t i = 0; i < h.matrix.rows(); ++i)
        for (std::size_t j = 0; j < h.matrix.cols(); ++j) h.matrix(i, j) = residue(h.matrix(i, j), mods[i]);
    return h;
}

GroupHom GroupHom::identity(const FgAbelianGroup& g) {
    return {g, g, IntMatrix::identity(g.generators())};
}

GroupHom induced_hom(const Quotient& from, const Quotient& to, const IntMatrix& f) {
    if (f.cols() != from.ambient() || f.rows() != to.ambient())
        throw NotWellDefined("ambient map has the wrong shape");
    IntMatrix img = f * from.relations;
    for (std::size_t j = 0; j < img.cols(); ++j)
        if (!all_zero(to.project(img.column(j))))
            throw NotWellDefined("relation " + std::to_string(j) + " does not map into the target relations");
    GroupHom h{from.group, to.group, IntMatrix(to.group.generators(), from.group.generators())};
    for (std::size_t k = 0; k < from.group.generators(); ++k) {
        IntVec c = to.project(f.apply(from.lift(k)));
        for (std::size_t i = 0; i < c.size(); ++i) h.matrix(i, k) = c[i];
    }
    return h;
}

GroupHom restricted_hom(const Kernel& from, const Kernel& to, const IntMatrix& f) {
    if (f.cols() != from.matrix.cols() || f.rows() != to.matrix.cols())
        throw NotWellDefined("ambient map has the wrong shape");
    GroupHom h{FgAbelianGroup::free(from.dim()), FgAbelianGroup::free(to.dim()), IntMatrix(to.dim(), from.dim())};
    for (std::size_t k = 0; k < from.dim(); ++k) {
        IntVec y = f.apply(from.basis.column(k));
        if (!all_zero(to.matrix.apply(y)))
            throw NotWellDefined("kernel vector " + std::to_string(k) + " leaves the target kernel");
        IntVec c = to.coordinates(y);
        for (std::size_t i = 0; i < c.size(); ++i) h.matrix(i, k) = c[i];
    }
    return h;
}

IntMatrix hermite_basis(const IntMatrix& gens) {
    IntMatrix m = gens.transpose();  // generators as rows
    std::size_t rows = m.rows(), n = m.cols(), r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (sgn(m(i, c)) != 0 && (best == rows || cmpabs(m(i, c), m(best, c)) < 0)) best = i;
            if (best == rows) break;
            m.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (sgn(m(i, c)) == 0) continue;
                Int q = m(i, c) / m(r, c);
                m.add_row(i, r, -q);
                if (sgn(m(i, c)) != 0) done = false;
            }
            if (done) break;
        }
        if (sgn(m(r, c)) == 0) continue;
        if (sgn(m(r, c)) < 0) m.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
            m.add_row(i, r, -q);
        }
        ++r;
    }
    IntMatrix out(n, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = m(i, j);
    return out;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
    return a.rows() == b.rows() && hermite_basis(a) == hermite_basis(b);
}

}  // namespace occ
