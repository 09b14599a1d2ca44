#include "hypcone/sft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hypcone/errors.hpp"
#include "hypcone/numeric.hpp"

namespace hypcone {

namespace {

// Tarjan-free SCC via double DFS (Kosaraju); k is tiny.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& m) {
    const int k = static_cast<int>(m.size());
    std::vector<int> order;
    std::vector<char> seen(k, 0);
    std::function<void(int)> dfs1 = [&](int v) {
        seen[v] = 1;
        for (int w = 0; w < k; ++w)
            if (m[v][w] && !seen[w]) dfs1(w);
        order.push_back(v);
    };
    for (int v = 0; v < k; ++v)
        if (!seen[v]) dfs1(v);
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<std::vector<int>> comps;
    std::function<void(int)> dfs2 = [&](int v) {
        seen[v] = 1;
        comps.back().push_back(v);
        for (int w = 0; w < k; ++w)
            if (m[w][v] && !seen[w]) dfs2(w);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (!seen[*it]) {
            comps.emplace_back();
            dfs2(*it);
        }
    return comps;
}

bool is_aperiodic(const std::vector<std::vector<int>>& m) {
    // gcd of return-time differences from state 0 via BFS levels.
    const int k = static_cast<int>(m.size());
    std::vector<int> level(k, -1);
    level[0] = 0;
    std::vector<int> queue{0};
    int g = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int w = 0; w < k; ++w) {
            if (!m[v][w]) continue;
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                queue.push_back(w);
            } else {
                g = std::gcd(g, std::abs(level[v] + 1 - level[w]));
            }
        }
    }
    return g == 1;
}

} // namespace

PerronData pf_data(const std::vector<std::vector<int>>& matrix, double tol) {
    const int k = static_cast<int>(matrix.size());
    if (k < 1) throw input_error("empty transition matrix");
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != k)
            throw input_error("transition matrix must be square");
    if (tol <= 0) throw input_error("eigen tolerance must be positive");

    auto comps = strongly_connected_components(matrix);
    if (comps.size() != 1) {
        std::ostringstream msg;
        msg << "matrix is reducible; strongly connected components:";
        for (const auto& comp : comps) {
            msg << " {";
            for (std::size_t i = 0; i < comp.size(); ++i)
                msg << (i ? "," : "") << comp[i];
            msg << "}";
        }
        throw input_error(msg.str());
    }

    // Power iteration on v -> Mv with the all-ones start, terminating on the
    // certified residual ||Mv - lambda v||_inf < tol ||v||_inf.
    auto iterate = [k, tol](const std::function<double(const std::vector<double>&, int)>& matvec,
                            double* lambda_out, int* iters_out, double* resid_out) {
        std::vector<double> v(k, 1.0), mv(k);
        const int max_iter = 100000;
        for (int it = 1; it <= max_iter; ++it) {
            double norm = 0.0;
            for (int i = 0; i < k; ++i) {
                mv[i] = matvec(v, i);
                norm = std::max(norm, mv[i]);
            }
            if (norm == 0.0) throw input_error("matrix has a zero row/column; no Perron data");
            double lam = 0.0, vmax = 0.0;
            for (int i = 0; i < k; ++i) vmax = std::max(vmax, v[i]);
            for (int i = 0; i < k; ++i)
                if (v[i] == vmax) lam = mv[i] / v[i];
            double resid = 0.0;
            for (int i = 0; i < k; ++i) resid = std::max(resid, std::abs(mv[i] - lam * v[i]));
            if (resid < tol * vmax && it > 4) {
                if (lambda_out) *lambda_out = lam;
                if (iters_out) *iters_out = it;
                if (resid_out) *resid_out = resid / vmax;
                return v;
            }
            for (int i = 0; i < k; ++i) v[i] = mv[i] / norm;
        }
        throw precision_error("power iteration did not reach tol " + format_sig(tol));
    };

    PerronData pf;
    auto m = iterate(
        [&matrix, k](const std::vector<double>& v, int i) {
            double s = 0.0;
            for (int j = 0; j < k; ++j)
                if (matrix[i][j]) s += v[j];
            return s;
        },
        &pf.lambda, &pf.iterations, &pf.residual);
    auto u = iterate(
        [&matrix, k](const std::vector<double>& v, int j) {
            double s = 0.0;
            for (int i = 0; i < k; ++i)
                if (matrix[i][j]) s += v[i];
            return s;
        },
        nullptr, nullptr, nullptr);

    const double msum = std::accumulate(m.begin(), m.end(), 0.0);
    for (auto& x : m) x /= msum;
    double um = 0.0;
    for (int i = 0; i < k; ++i) um += u[i] * m[i];
    for (auto& x : u) x /= um;
    pf.right = std::move(m);
    pf.left = std::move(u);
    return pf;
}

std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (int b : w) s.push_back(b < 10 ? static_cast<char>('0' + b) : static_cast<char>('a' + b - 10));
    return s;
}

Word word_from_string(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c >= '0' && c <= '9')
            w.push_back(c - '0');
        else if (c >= 'a' && c <= 'z')
            w.push_back(c - 'a' + 10);
        else
            throw input_error(std::string("bad symbol '") + c + "' in word");
    }
    return w;
}

SftSystem SftSystem::from_matrix(const std::vector<std::vector<int>>& rows, double eigen_tol) {
    const int k = static_cast<int>(rows.size());
    if (k < 2) throw input_error("alphabet size must be at least 2");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != k)
            throw input_error("transition matrix row length != alphabet size");
        for (int x : row)
            if (x != 0 && x != 1) throw input_error("transition matrix entries must be 0 or 1");
    }
    SftSystem sft;
    sft.k_ = k;
    sft.rows_ = rows;
    sft.adj_.resize(k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sft.adj_[i * k + j] = static_cast<std::uint8_t>(rows[i][j]);
    sft.eigen_tol_ = eigen_tol;
    sft.irreducible_ = strongly_connected_components(rows).size() == 1;
    sft.aperiodic_ = sft.irreducible_ && is_aperiodic(rows);
    if (sft.irreducible_) sft.pf_ = pf_data(rows, eigen_tol);
    return sft;
}

SftSystem SftSystem::transpose() const {
    std::vector<std::vector<int>> t(k_, std::vector<int>(k_, 0));
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) t[j][i] = rows_[i][j];
    return from_matrix(t, eigen_tol_);
}

bool SftSystem::word_admissible(const Word& w) const {
    for (int b : w)
        if (b < 0 || b >= k_) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!transition(w[i], w[i + 1])) return false;
    return true;
}

std::vector<Word> SftSystem::admissible_words(int length) const {
    std::vector<Word> out;
    if (length <= 0) return out;
    Word cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (int b = 0; b < k_; ++b) {
            if (!cur.empty() && !transition(cur.back(), b)) continue;
            cur.push_back(b);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

double SftSystem::conformal_cylinder_measure(const Word& w) const {
    if (w.empty()) throw input_error("cylinder word must be non-empty");
    if (!word_admissible(w)) throw input_error("inadmissible word " + word_to_string(w));
    if (!irreducible_) throw input_error("conformal measure needs an irreducible matrix");
    const auto& m = pf_.right;
    const double msum = std::accumulate(m.begin(), m.end(), 0.0);
    const int n = static_cast<int>(w.size());
    return std::pow(pf_.lambda, -(n - 1)) * m[w.back()] / msum;
}

double SftSystem::parry_two_sided(const Word& w) const {
    if (w.empty()) throw input_error("cylinder word must be non-empty");
    if (!word_admissible(w)) throw input_error("inadmissible word " + word_to_string(w));
    if (!irreducible_) throw input_error("Parry measure needs an irreducible matrix");
    const int n = static_cast<int>(w.size());
    return pf_.left[w.front()] * std::pow(pf_.lambda, -(n - 1)) * pf_.right[w.back()];
}

double SftSystem::product_bowen(const Word& past, const Word& future) const {
    if (past.empty() || future.empty()) throw input_error("rectangle sides must be non-empty");
    if (past.back() != future.front())
        throw input_error("rectangle seam mismatch: past ends with " +
                          std::to_string(past.back()) + ", future starts with " +
                          std::to_string(future.front()));
    if (!word_admissible(past)) throw input_error("inadmissible past " + word_to_string(past));
    if (!word_admissible(future)) throw input_error("inadmissible future " + word_to_string(future));

    if (!transpose_cache_)
        transpose_cache_ = std::make_shared<const SftSystem>(transpose());
    const SftSystem& top = *transpose_cache_;

    const int s = future.front();
    // Forward conformal measure, conditioned on the seam cylinder.
    const double mu_plus = conformal_cylinder_measure(future) /
                           conformal_cylinder_measure(Word{s});
    // Past side: the reversed past is a word of the transpose shift.
    Word rev(past.rbegin(), past.rend());
    const double mu_minus = top.conformal_cylinder_measure(rev) /
                            top.conformal_cylinder_measure(Word{s});
    // Seam density: u_s m_s with u taken from the transpose system's own
    // eigen-data, normalized so the seam weights sum to 1.
    const auto& m = pf_.right;
    const auto& mt = top.perron().right;
    double norm = 0.0;
    for (int b = 0; b < k_; ++b) norm += m[b] * mt[b];
    const double seam_weight = m[s] * mt[s] / norm;
    return mu_plus * mu_minus * seam_weight;
}

GradedCone build_word_cone(const SftSystem& sft, int depth,
                           const std::vector<std::vector<double>>& symbol_weight_cocycles,
                           const std::vector<std::string>& weight_names) {
    if (depth < 0) throw input_error("cone depth must be >= 0");
    for (const auto& w : symbol_weight_cocycles)
        if (static_cast<int>(w.size()) != sft.alphabet_size())
            throw input_error("symbol weight vector length != alphabet size");

    std::vector<QuasiCocycleSpec> specs;
    specs.push_back({"level", 0.0, CocycleKind::level, true, 1.0});
    for (std::size_t i = 0; i < symbol_weight_cocycles.size(); ++i) {
        QuasiCocycleSpec s;
        s.name = i < weight_names.size() ? weight_names[i] : ("weight" + std::to_string(i));
        s.kind = CocycleKind::custom;
        specs.push_back(s);
    }
    GradedCone cone(std::move(specs));
    const std::int32_t root = cone.add_root({0.0, 0.0});

    std::vector<std::int32_t> frontier{root};
    std::vector<int> frontier_symbol{-1};  // -1: root, any first symbol allowed
    std::vector<double> inc(1 + symbol_weight_cocycles.size());
    for (int level = 0; level < depth; ++level) {
        std::vector<std::int32_t> next;
        std::vector<int> next_symbol;
        for (std::size_t f = 0; f < frontier.size(); ++f) {
            const std::int32_t v = frontier[f];
            const int sym = frontier_symbol[f];
            for (int b = 0; b < sft.alphabet_size(); ++b) {
                if (sym >= 0 && !sft.transition(sym, b)) continue;
                inc[0] = 1.0;
                for (std::size_t c = 0; c < symbol_weight_cocycles.size(); ++c)
                    inc[c + 1] = symbol_weight_cocycles[c][b];
                const auto child = cone.add_child(v, b, {0.0, 0.0}, inc);
                next.push_back(child);
                next_symbol.push_back(b);
            }
            cone.mark_expanded(v);
        }
        frontier = std::move(next);
        frontier_symbol = std::move(next_symbol);
        if (cone.size() > 10'000'000)
            throw resource_error("word cone exceeds 10^7 nodes at depth " + std::to_string(level + 1));
    }
    cone.finalize();
    return cone;
}

// -- two-sided points ---------------------------------------------------------

int TwoSidedPoint::seam() const {
    if (future.empty()) throw input_error("two-sided point needs a non-empty future");
    return future.front();
}

int TwoSidedPoint::at(int i) const {
    if (i >= 0) {
        if (i >= static_cast<int>(future.size()))
            throw input_error("two-sided point: future window too short for index " + std::to_string(i));
        return future[i];
    }
    const int j = static_cast<int>(past.size()) + i;
    if (j < 0)
        throw input_error("two-sided point: past window too short for index " + std::to_string(i));
    return past[j];
}

TwoSidedPoint TwoSidedPoint::shifted(int n) const {
    if (n < 0) throw input_error("only forward shifts are supported");
    if (n >= static_cast<int>(future.size()))
        throw input_error("two-sided point: future too short to shift by " + std::to_string(n));
    TwoSidedPoint out;
    out.past = past;
    out.past.insert(out.past.end(), future.begin(), future.begin() + n);
    out.future.assign(future.begin() + n, future.end());
    return out;
}

void TwoSidedPoint::validate(const SftSystem& sft) const {
    if (future.empty()) throw input_error("two-sided point needs a non-empty future");
    Word joined = past;
    joined.insert(joined.end(), future.begin(), future.end());
    if (!sft.word_admissible(joined))
        throw input_error("two-sided point is not admissible across the seam");
}

TwoSidedPoint holonomy_bracket(const SftSystem& sft, const TwoSidedPoint& x,
                               const TwoSidedPoint& y) {
    x.validate(sft);
    y.validate(sft);
    if (x.seam() != y.seam())
        throw input_error("points lie outside a common chart: seam symbols " +
                          std::to_string(x.seam()) + " vs " + std::to_string(y.seam()));
    TwoSidedPoint out;
    out.past = x.past;
    out.future = y.future;
    return out;
}

Word reference_past(const SftSystem& sft, int seam, int length) {
    if (seam < 0 || seam >= sft.alphabet_size()) throw input_error("seam symbol out of range");
    if (!sft.irreducible()) throw input_error("reference pasts need an irreducible matrix");
    // Shortest cycle seam -> seam, lexicographically smallest on ties: BFS
    // over (state), tracking the smallest predecessor word implicitly by
    // scanning symbols in increasing order.
    const int k = sft.alphabet_size();
    std::vector<Word> best(k);  // smallest path word from seam to each state
    std::vector<char> reached(k, 0);
    std::vector<int> frontier{seam};
    reached[seam] = 1;
    Word cycle;
    while (cycle.empty()) {
        std::vector<int> next;
        // Expand in lexicographic word order: iterate states in the order
        // their best words compare, symbols ascending.
        std::vector<int> order(frontier);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return best[a] < best[b]; });
        for (int v : order) {
            for (int b = 0; b < k; ++b) {
                if (!sft.transition(v, b)) continue;
                if (b == seam) {
                    cycle = best[v];
                    cycle.push_back(b);
                    break;
                }
                if (!reached[b]) {
                    reached[b] = 1;
                    best[b] = best[v];
                    best[b].push_back(b);
                    next.push_back(b);
                }
            }
            if (!cycle.empty()) break;
        }
        if (cycle.empty() && next.empty())
            throw input_error("no admissible cycle through symbol " + std::to_string(seam));
        frontier = std::move(next);
    }
    // cycle = [c_1, ..., c_{p-1}, seam] describing seam -> c_1 -> ... -> seam.
    // The infinite past repeats it; position -1 holds c_{p-1} (the symbol
    // feeding the seam), position -p holds the seam again.
    const int p = static_cast<int>(cycle.size());
    Word out(length);
    for (int i = 0; i < length; ++i) {
        const int idx = ((p - 2 - i) % p + p) % p;
        out[length - 1 - i] = cycle[idx];  // out[length-1-i] is position -(i+1)
    }
    return out;
}

// -- cocycle projection -------------------------------------------------------

namespace {

// View of sigma^n(point) with the original past, reading symbols by index.
SymbolView shifted_view(const TwoSidedPoint& pt, int n) {
    return [&pt, n](int i) { return pt.at(n + i); };
}

// View of sigma^n([pt, x_B]): past replaced by the reference past of the
// seam symbol; indices < -n fall into the reference word.
SymbolView shifted_reference_view(const TwoSidedPoint& pt, const Word& ref, int n) {
    return [&pt, &ref, n](int i) {
        const int j = n + i;
        if (j >= 0) return pt.at(j);
        const int r = static_cast<int>(ref.size()) + j;
        if (r < 0) throw input_error("reference past window exhausted");
        return ref[r];
    };
}

} // namespace

namespace {

// Measures var_n of psi over pairs of admissible windows agreeing on
// x_{-n}..x_n, by exhaustive enumeration of window words (sampled via a
// fixed-seed generator when the enumeration would be too large).
double holder_variation(const SftSystem& sft, const HolderFunction& psi, int n) {
    const int reach = std::max({psi.past_window, psi.future_window, n});
    const int len = 2 * reach + 1;  // window x_{-reach}..x_{reach}
    auto words = sft.admissible_words(len);
    std::vector<const Word*> pool;
    for (const auto& w : words) pool.push_back(&w);
    const bool sample = pool.size() > 4096;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    double varn = 0.0;
    auto value = [&](const Word& w) {
        SymbolView view = [&w, reach](int i) {
            const int j = reach + i;
            if (j < 0 || j >= static_cast<int>(w.size()))
                throw input_error("variation window exhausted");
            return w[j];
        };
        return psi.eval(view);
    };
    auto agree_center = [&](const Word& a, const Word& b) {
        for (int i = -n; i <= n; ++i)
            if (a[reach + i] != b[reach + i]) return false;
        return true;
    };
    if (!sample) {
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j)
                if (agree_center(*pool[i], *pool[j]))
                    varn = std::max(varn, std::abs(value(*pool[i]) - value(*pool[j])));
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int t = 0; t < 20000; ++t) {
            const Word& a = *pool[pick(rng)];
            const Word& b = *pool[pick(rng)];
            if (agree_center(a, b)) varn = std::max(varn, std::abs(value(a) - value(b)));
        }
    }
    return varn;
}

} // namespace

ProjectedCocycle project_cocycle(const SftSystem& sft, const HolderFunction& psi,
                                 int depth, double tol) {
    if (!psi.eval) throw input_error("psi has no evaluator");
    if (psi.theta <= 0.0 || psi.theta >= 1.0)
        throw input_error("Hoelder ratio theta must lie in (0,1)");
    if (depth < 1) throw input_error("projection depth must be >= 1");
    const double tail = psi.var_bound * std::pow(psi.theta, depth) / (1.0 - psi.theta);
    if (tol > 0.0 && tail >= tol)
        throw input_error("projection depth " + std::to_string(depth) +
                          " too small for declared theta: tail bound " + format_sig(tail) +
                          " >= tol " + format_sig(tol));

    // Spot-check the declared Hoelder data on small windows.
    for (int n = 0; n <= std::min(3, std::max(psi.past_window, psi.future_window)); ++n) {
        const double varn = holder_variation(sft, psi, n);
        const double allowed = psi.var_bound * std::pow(psi.theta, n);
        if (varn > allowed + 1e-12)
            throw input_error("declared Hoelder data violated: var_" + std::to_string(n) +
                              " = " + format_sig(varn) + " > " + format_sig(allowed));
    }

    ProjectedCocycle out;
    out.depth = depth;
    out.tail_bound = tail;

    auto ref_for = std::make_shared<std::vector<Word>>();
    const int ref_len = depth + psi.past_window + 4;
    for (int s = 0; s < sft.alphabet_size(); ++s)
        ref_for->push_back(reference_past(sft, s, ref_len));

    auto eval_point = [psi](const TwoSidedPoint& pt) {
        return psi.eval(shifted_view(pt, 0));
    };

    auto phi_fn = [psi, depth, ref_for](const TwoSidedPoint& pt) {
        const Word& ref = (*ref_for)[pt.seam()];
        double sum = 0.0;
        for (int n = 0; n <= depth; ++n) {
            const double a = psi.eval(shifted_view(pt, n));
            const double b = psi.eval(shifted_reference_view(pt, ref, n));
            sum += a - b;
        }
        return sum;
    };

    auto psi_plus_fn = [phi_fn, eval_point](const TwoSidedPoint& pt) {
        return eval_point(pt) - phi_fn(pt) + phi_fn(pt.shifted(1));
    };

    out.phi = phi_fn;
    out.psi = eval_point;
    out.psi_plus = psi_plus_fn;
    return out;
}

std::vector<Word> periodic_orbit_words(const SftSystem& sft, int max_period) {
    std::vector<Word> out;
    for (int p = 1; p <= max_period; ++p) {
        for (const auto& w : sft.admissible_words(p)) {
            if (!sft.transition(w.back(), w.front())) continue;  // cyclic admissibility
            // keep only the lexicographically smallest rotation, and skip
            // words with a smaller period (their orbit already appeared).
            bool canonical = true;
            bool smaller_period = false;
            for (int r = 1; r < p; ++r) {
                Word rot(w.begin() + r, w.end());
                rot.insert(rot.end(), w.begin(), w.begin() + r);
                if (rot < w) canonical = false;
                if (rot == w) smaller_period = true;
            }
            if (canonical && !smaller_period) out.push_back(w);
        }
    }
    return out;
}

double birkhoff_sum(const SftSystem& sft, const Word& w,
                    const std::function<double(const TwoSidedPoint&)>& f,
                    int window) {
    if (w.empty()) throw input_error("empty periodic word");
    if (!sft.word_admissible(w) || !sft.transition(w.back(), w.front()))
        throw input_error("word is not cyclically admissible");
    const int p = static_cast<int>(w.size());
    double sum = 0.0;
    for (int k = 0; k < p; ++k) {
        TwoSidedPoint pt;
        for (int i = -window; i < 0; ++i)
            pt.past.push_back(w[((k + i) % p + p) % p]);
        for (int i = 0; i < window; ++i)
            pt.future.push_back(w[(k + i) % p]);
        sum += f(pt);
    }
    return sum;
}

} // namespace hypcone
