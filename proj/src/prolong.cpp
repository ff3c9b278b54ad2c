#include "kt/prolong.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace kt {

// ---------------------------------------------------------------------------
// ProlongedSystem

ProlongedSystem::ProlongedSystem(EquationSet base, int M)
    : base_(std::move(base)), M_(M) {
    const BranchSpec& b = base_.branch;
    // unknown jets up to order M+1, tabular order: block by l (i.e. by i),
    // then m, then (j, k, mu)
    for (const UnknownId& u0 : ansatz(b))
        for (int m = 0; m <= M + 1; ++m)
            for (int mu = 0; mu <= m; ++mu)
                index_.ids.push_back({u0.i, u0.j, u0.k, m, mu});
    std::sort(index_.ids.begin(), index_.ids.end(),
              [](const UnknownId& a, const UnknownId& b2) {
                  return std::tie(a.i, a.m, a.j, a.k, a.mu) <
                         std::tie(b2.i, b2.m, b2.j, b2.k, b2.mu);
              });
    for (uint32_t n = 0; n < index_.ids.size(); ++n) index_.pos[index_.ids[n]] = n;
    if ((long long)index_.ids.size() != nvars(b, M))
        throw internal_error("prolong: unknown count disagrees with nvars");

    for (uint32_t e = 0; e < base_.ids.size(); ++e)
        for (int m = 0; m <= M; ++m)
            for (int mu = 0; mu <= m; ++mu) rows_.push_back({e, m, mu});
    std::sort(rows_.begin(), rows_.end(), [this](const PEqId& a, const PEqId& c) {
        const EqId& ia = base_.ids[a.base];
        const EqId& ic = base_.ids[c.base];
        int la = base_.branch.d + 1 - ia.i;  // monotone in the cell index l
        int lc = base_.branch.d + 1 - ic.i;
        return std::tie(a.m, la, ia.j, ia.k, a.mu) <
               std::tie(c.m, lc, ic.j, ic.k, c.mu);
    });
    if ((long long)rows_.size() != meqns(b, M))
        throw internal_error("prolong: equation count disagrees with meqns");
}

LinearForm ProlongedSystem::symbolic_row(const PEqId& r) const {
    if (r.m == 0) return base_.forms[r.base];
    auto key = std::make_tuple(r.base, r.m, r.mu);
    auto it = row_cache_.find(key);
    if (it != row_cache_.end()) return it->second;
    LinearForm val;
    if (r.mu > 0)
        val = symbolic_row({r.base, r.m - 1, r.mu - 1}).diff(0);
    else
        val = symbolic_row({r.base, r.m - 1, 0}).diff(1);
    row_cache_[key] = val;
    return val;
}

std::string ProlongedSystem::row_name(const PEqId& r) const {
    const EqId& id = base_.ids[r.base];
    std::ostringstream os;
    os << "P(" << id.i << "," << id.j << "," << id.k << ";" << r.m << "," << r.mu << ")";
    return os.str();
}

ProlongedSystem prolong(EquationSet base, int M) {
    return ProlongedSystem(std::move(base), M);
}

// ---------------------------------------------------------------------------
// Taylor evaluation of coefficient derivatives at the point

namespace {

struct DerivTable {
    int maxdeg;
    std::vector<Rat> v;  // triangular, index tri(a,b)

    static size_t tri(int a, int b) {
        int n = a + b;
        return (size_t)n * (n + 1) / 2 + a;
    }
    const Rat& at(int a, int b) const { return v[tri(a, b)]; }
};

// all partial derivative values d^(a+b) f / dx^a dy^b at P, a+b <= maxdeg
DerivTable deriv_table(const RatFunc& f, const Point& P, int maxdeg,
                       const std::string& what) {
    size_t size = (size_t)(maxdeg + 1) * (maxdeg + 2) / 2;
    auto tri = DerivTable::tri;
    std::vector<Rat> N(size), D(size), W(size), T(size);
    for (const auto& [e, c] : f.num().shifted(P).terms())
        if (e.a + e.b <= maxdeg) N[tri(e.a, e.b)] = c;
    for (const auto& [e, c] : f.den().shifted(P).terms())
        if (e.a + e.b <= maxdeg) D[tri(e.a, e.b)] = c;
    Rat d0 = D[0];
    if (d0.is_zero())
        throw point_error("denominator vanishes at " + point_str(P) + " in " + what);
    Rat d0inv = d0.inv();
    W[0] = d0inv;
    for (int n = 1; n <= maxdeg; ++n) {
        for (int a = 0; a <= n; ++a) {
            int b = n - a;
            Rat acc(0);
            for (int u = 0; u <= a; ++u)
                for (int v2 = 0; v2 <= b; ++v2) {
                    if (u + v2 == 0) continue;
                    const Rat& dv = D[tri(u, v2)];
                    if (dv.is_zero()) continue;
                    const Rat& wv = W[tri(a - u, b - v2)];
                    if (!wv.is_zero()) acc += dv * wv;
                }
            if (!acc.is_zero()) W[tri(a, b)] = -(acc * d0inv);
        }
    }
    for (int n = 0; n <= maxdeg; ++n)
        for (int a = 0; a <= n; ++a) {
            int b = n - a;
            Rat acc(0);
            for (int u = 0; u <= a; ++u)
                for (int v2 = 0; v2 <= b; ++v2) {
                    const Rat& nv = N[tri(u, v2)];
                    if (nv.is_zero()) continue;
                    const Rat& wv = W[tri(a - u, b - v2)];
                    if (!wv.is_zero()) acc += nv * wv;
                }
            T[tri(a, b)] = acc;
        }
    // scale series coefficients to derivative values
    std::vector<Rat> fact(maxdeg + 1);
    fact[0] = Rat(1);
    for (int i = 1; i <= maxdeg; ++i) fact[i] = fact[i - 1] * Rat(i);
    for (int n = 0; n <= maxdeg; ++n)
        for (int a = 0; a <= n; ++a)
            if (!T[tri(a, n - a)].is_zero()) T[tri(a, n - a)] *= fact[a] * fact[n - a];
    return DerivTable{maxdeg, std::move(T)};
}

std::vector<std::vector<Int>> binomial_table(int n) {
    std::vector<std::vector<Int>> C(n + 1);
    for (int i = 0; i <= n; ++i) {
        C[i].resize(i + 1);
        C[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            C[i][j] = C[i - 1][j - 1] + ((j <= i - 1) ? C[i - 1][j] : Int(0));
    }
    return C;
}

}  // namespace

size_t PointSystem::n_active_cols() const {
    size_t n = 0;
    for (auto s : col_state)
        if (s == ColState::active) ++n;
    return n;
}

std::vector<uint32_t> PointSystem::active_cols() const {
    std::vector<uint32_t> out;
    for (uint32_t c = 0; c < col_state.size(); ++c)
        if (col_state[c] == ColState::active) out.push_back(c);
    return out;
}

void PointSystem::dump(std::ostream& os) const {
    for (size_t r = 0; r < rows.size(); ++r) {
        const EqId& b = base_ids[row_ids[r].base];
        os << "P(" << b.i << "," << b.j << "," << b.k << ";" << row_ids[r].m << ","
           << row_ids[r].mu << "):";
        for (const auto& [c, v] : rows[r]) os << " " << c << ":" << v.str();
        os << "\n";
    }
}

PointSystem evaluate(const ProlongedSystem& sys, const Point& point) {
    PointSystem ps;
    ps.point = point;
    ps.branch = sys.branch();
    ps.M = sys.M();
    ps.index = sys.index();
    ps.base_ids = sys.base().ids;
    ps.col_state.assign(ps.index.size(), PointSystem::ColState::active);

    const auto& base = sys.base();
    const int M = sys.M();
    auto C = binomial_table(M + 2);

    // derivative-value tables for every base coefficient
    std::vector<std::vector<std::pair<UnknownId, DerivTable>>> tables(base.forms.size());
    for (size_t e = 0; e < base.forms.size(); ++e) {
        for (const auto& [u, c] : base.forms[e].terms()) {
            std::ostringstream what;
            what << "P(" << base.ids[e].i << "," << base.ids[e].j << "," << base.ids[e].k
                 << ")";
            tables[e].emplace_back(u, deriv_table(c, point, M, what.str()));
        }
    }

    for (const PEqId& rid : sys.rows()) {
        std::map<uint32_t, Rat> acc;
        int mu = rid.mu, nu = rid.m - rid.mu;
        for (const auto& [u0, tbl] : tables[rid.base]) {
            for (int a = 0; a <= mu; ++a) {
                for (int b = 0; b <= nu; ++b) {
                    const Rat& dv = tbl.at(a, b);
                    if (dv.is_zero()) continue;
                    UnknownId u = u0;
                    u.m += (mu - a) + (nu - b);
                    u.mu += mu - a;
                    Rat contrib = dv * Rat(Int(C[mu][a] * C[nu][b]));
                    uint32_t col = ps.index.at(u);
                    auto [it, ins] = acc.try_emplace(col, contrib);
                    if (!ins) it->second += contrib;
                }
            }
        }
        QRow row;
        row.reserve(acc.size());
        for (auto& [c, v] : acc)
            if (!v.is_zero()) row.emplace_back(c, std::move(v));
        if (row.empty()) {
            ++ps.zero_rows_dropped;
            continue;
        }
        ps.rows.push_back(std::move(row));
        ps.row_ids.push_back(rid);
    }
    ps.original_rows = ps.rows;
    ps.original_ids = ps.row_ids;
    return ps;
}

std::vector<Rat> point_jet(const MomPoly& P, int d, const UnknownIndex& index,
                           const Point& point, int M) {
    std::vector<Rat> out(index.size(), Rat(0));
    for (const auto& [e, c] : P.terms()) {
        if (e.total() != d) throw internal_error("point_jet: not homogeneous of degree d");
        DerivTable tbl = deriv_table(c, point, M + 1, "jet coefficient");
        for (int m = 0; m <= M + 1; ++m) {
            for (int mu = 0; mu <= m; ++mu) {
                UnknownId u{e.deg_xy(), e.e[1], e.e[2], m, mu};
                out[index.at(u)] = tbl.at(mu, m - mu);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// gauge fixing

void gauge_fix(PointSystem& ps, const std::vector<std::vector<Rat>>& family_jets) {
    if (family_jets.empty()) return;
    const size_t T = family_jets.size();

    // candidate order-0 columns; the paper prefers I^(i,0,0,0)_k, so j = 0 first
    std::vector<uint32_t> cands;
    for (uint32_t c = 0; c < ps.index.size(); ++c)
        if (ps.index.ids[c].m == 0) cands.push_back(c);
    std::sort(cands.begin(), cands.end(), [&](uint32_t a, uint32_t b) {
        const UnknownId& ua = ps.index.ids[a];
        const UnknownId& ub = ps.index.ids[b];
        return std::tuple(ua.j != 0, ua.j, ua.i, ua.k) <
               std::tuple(ub.j != 0, ub.j, ub.i, ub.k);
    });

    std::vector<std::vector<Rat>> vecs = family_jets;
    std::vector<std::vector<Rat>> combo(T, std::vector<Rat>(T, Rat(0)));
    for (size_t i = 0; i < T; ++i) combo[i][i] = Rat(1);
    std::vector<char> used(T, 0);

    for (uint32_t col : cands) {
        size_t pick = T;
        for (size_t i = 0; i < T; ++i)
            if (!used[i] && !vecs[i][col].is_zero()) {
                pick = i;
                break;
            }
        if (pick == T) continue;
        for (size_t i = 0; i < T; ++i) {
            if (i == pick || used[i] || vecs[i][col].is_zero()) continue;
            Rat f = vecs[i][col] / vecs[pick][col];
            for (size_t c = 0; c < vecs[i].size(); ++c)
                if (!vecs[pick][c].is_zero()) vecs[i][c] -= f * vecs[pick][c];
            for (size_t c = 0; c < T; ++c)
                if (!combo[pick][c].is_zero()) combo[i][c] -= f * combo[pick][c];
        }
        used[pick] = 1;
        ps.gauge_cols.push_back(col);
        ps.gauge_combos.push_back(combo[pick]);
        ps.col_state[col] = PointSystem::ColState::gauged;
        if (ps.gauge_cols.size() == T) break;
    }

    // drop gauge-fixed columns from the live rows
    std::vector<QRow> kept;
    std::vector<PEqId> kept_ids;
    for (size_t r = 0; r < ps.rows.size(); ++r) {
        QRow nr;
        nr.reserve(ps.rows[r].size());
        for (auto& [c, v] : ps.rows[r])
            if (ps.col_state[c] == PointSystem::ColState::active)
                nr.emplace_back(c, std::move(v));
        if (nr.empty()) {
            ++ps.zero_rows_elimination;
            continue;
        }
        kept.push_back(std::move(nr));
        kept_ids.push_back(ps.row_ids[r]);
    }
    ps.rows = std::move(kept);
    ps.row_ids = std::move(kept_ids);
}

// ---------------------------------------------------------------------------
// elimination scheme

namespace {

QRow row_axpy(const QRow& r, const Rat& factor, const QRow& s) {
    // r - factor * s
    QRow out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].first < r[i].first) {
            out.emplace_back(s[j].first, -(factor * s[j].second));
            ++j;
        } else {
            Rat v = r[i].second - factor * s[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void eliminate(PointSystem& ps) {
    const size_t nrows = ps.rows.size();
    std::vector<char> alive(nrows, 1);
    std::vector<std::vector<uint32_t>> col_rows(ps.index.size());
    for (uint32_t r = 0; r < nrows; ++r)
        for (const auto& [c, v] : ps.rows[r]) col_rows[c].push_back(r);

    auto top_info = [&](uint32_t r) {
        int max_m = -1;
        int count = 0;
        uint32_t top = 0;
        for (const auto& [c, v] : ps.rows[r]) {
            int m = ps.index.ids[c].m;
            if (m > max_m) {
                max_m = m;
                count = 1;
                top = c;
            } else if (m == max_m) {
                ++count;
            }
        }
        return std::tuple(max_m, count, top);
    };
    // cells ordered by prolongation order m, then by l (descending base degree i)
    auto cell_l = [&](uint32_t r) {
        return ps.branch.d + 1 - ps.base_ids[ps.row_ids[r].base].i;
    };

    while (true) {
        std::vector<std::tuple<int, int, size_t, uint32_t>> cands;  // (m, l, nnz, row)
        for (uint32_t r = 0; r < nrows; ++r) {
            if (!alive[r]) continue;
            auto [mm, cnt, top] = top_info(r);
            if (cnt == 1)
                cands.emplace_back(ps.row_ids[r].m, cell_l(r), ps.rows[r].size(), r);
        }
        if (cands.empty()) break;
        std::sort(cands.begin(), cands.end());
        bool did = false;
        for (const auto& [cm, cb, cn, r] : cands) {
            if (!alive[r]) continue;
            auto [mm, cnt, u] = top_info(r);
            if (cnt != 1) continue;
            Rat cu;
            for (const auto& [c, v] : ps.rows[r])
                if (c == u) cu = v;
            // substitute u away everywhere else
            std::vector<uint32_t> carriers = col_rows[u];
            for (uint32_t r2 : carriers) {
                if (r2 == r || !alive[r2]) continue;
                Rat c2;
                bool has = false;
                for (const auto& [c, v] : ps.rows[r2])
                    if (c == u) {
                        c2 = v;
                        has = true;
                        break;
                    }
                if (!has) continue;  // stale incidence entry
                QRow merged = row_axpy(ps.rows[r2], c2 / cu, ps.rows[r]);
                // register new columns in the incidence lists
                {
                    size_t oi = 0;
                    for (const auto& [c, v] : merged) {
                        while (oi < ps.rows[r2].size() && ps.rows[r2][oi].first < c) ++oi;
                        bool existed =
                            oi < ps.rows[r2].size() && ps.rows[r2][oi].first == c;
                        if (!existed) col_rows[c].push_back(r2);
                    }
                }
                ps.rows[r2] = std::move(merged);
                if (ps.rows[r2].empty()) {
                    alive[r2] = 0;
                    ++ps.zero_rows_elimination;
                }
            }
            col_rows[u].clear();
            ps.eliminated.push_back({u, ps.rows[r]});
            ps.col_state[u] = PointSystem::ColState::eliminated;
            alive[r] = 0;
            did = true;
        }
        if (!did) break;
    }

    std::vector<QRow> kept;
    std::vector<PEqId> kept_ids;
    for (uint32_t r = 0; r < nrows; ++r) {
        if (!alive[r]) continue;
        kept.push_back(std::move(ps.rows[r]));
        kept_ids.push_back(ps.row_ids[r]);
    }
    ps.rows = std::move(kept);
    ps.row_ids = std::move(kept_ids);
}

// ---------------------------------------------------------------------------
// integer matrix

IntMatrixResult to_int_matrix(const PointSystem& ps) {
    IntMatrixResult out;
    out.col_map = ps.active_cols();
    std::map<uint32_t, uint32_t> remap;
    for (uint32_t n = 0; n < out.col_map.size(); ++n) remap[out.col_map[n]] = n;

    SparseIntMatrix& A = out.matrix;
    A.ncols = out.col_map.size();
    for (const QRow& r : ps.rows) {
        Int L = 1;
        for (const auto& [c, v] : r) {
            Int d = v.den();
            Int g = gcd(L, d);
            L = L / g * d;
        }
        SparseIntMatrix::Row ir;
        ir.reserve(r.size());
        Int G = 0;
        for (const auto& [c, v] : r) {
            Int scaled = v.num() * (L / v.den());
            G = gcd(G, scaled);
            ir.emplace_back(remap.at(c), std::move(scaled));
        }
        if (ir.empty()) continue;
        if (G != 1)
            for (auto& [c, v] : ir)
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), G.get_mpz_t());
        A.rows.push_back(std::move(ir));
        A.row_scales.push_back(Rat(L, G));
    }
    A.nrows = A.rows.size();
    return out;
}

std::vector<Rat> lift_solution(const PointSystem& ps, const std::vector<uint32_t>& col_map,
                               const std::vector<Rat>& v) {
    std::vector<Rat> full(ps.index.size(), Rat(0));
    if (v.size() != col_map.size()) throw internal_error("lift_solution: size mismatch");
    for (size_t n = 0; n < col_map.size(); ++n) full[col_map[n]] = v[n];
    for (auto it = ps.eliminated.rbegin(); it != ps.eliminated.rend(); ++it) {
        Rat pivot;
        Rat acc(0);
        for (const auto& [c, val] : it->row) {
            if (c == it->col) {
                pivot = val;
                continue;
            }
            if (!full[c].is_zero()) acc += val * full[c];
        }
        full[it->col] = -(acc / pivot);
    }
    return full;
}

bool satisfies_original(const PointSystem& ps, const std::vector<Rat>& full) {
    for (const QRow& r : ps.original_rows) {
        Rat acc(0);
        for (const auto& [c, v] : r)
            if (!full[c].is_zero()) acc += v * full[c];
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace kt
