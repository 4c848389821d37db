#include "pmg/core_solver.hpp"

#include <algorithm>

namespace pmg {

namespace {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    Rational objective;
};

// Dense two-phase simplex with Bland's rule, exact rational arithmetic.
// Solves: min c.x  subject to  A x >= b, x >= 0.
class Simplex {
public:
    Simplex(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
            const std::vector<Rational>& c)
        : m_(static_cast<int>(A.size())), n_(static_cast<int>(c.size())), cost_(c) {
        // equality form: A x - s = b with s >= 0, rows flipped so rhs >= 0
        cols_ = n_ + m_ + m_;  // x, surplus, artificial
        tab_.assign(m_ + 1, std::vector<Rational>(cols_ + 1));
        basis_.assign(m_, 0);
        for (int i = 0; i < m_; ++i) {
            bool flip = b[i].sign() < 0;
            for (int j = 0; j < n_; ++j) tab_[i][j] = flip ? -A[i][j] : A[i][j];
            tab_[i][n_ + i] = Rational(flip ? 1 : -1);
            tab_[i][n_ + m_ + i] = Rational(1);
            tab_[i][cols_] = flip ? -b[i] : b[i];
            basis_[i] = n_ + m_ + i;
        }
    }

    LpResult solve() {
        // phase 1: minimize the artificial sum
        for (int j = 0; j <= cols_; ++j) {
            Rational s;
            for (int i = 0; i < m_; ++i) s += tab_[i][j];
            tab_[m_][j] = (j >= n_ + m_ && j < cols_) ? Rational(1) - s : -s;
        }
        run(cols_);
        if (!(-tab_[m_][cols_]).is_zero()) return {LpStatus::Infeasible, {}, {}};
        purge_artificials();

        // phase 2: real objective, artificial columns barred from entering
        for (int j = 0; j <= cols_; ++j) tab_[m_][j] = Rational(0);
        for (int j = 0; j < n_; ++j) tab_[m_][j] = cost_[j];
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_ && !cost_[basis_[i]].is_zero()) {
                Rational f = cost_[basis_[i]];
                for (int j = 0; j <= cols_; ++j) tab_[m_][j] -= f * tab_[i][j];
            }
        }
        if (!run(n_ + m_)) return {LpStatus::Unbounded, {}, {}};

        LpResult out;
        out.status = LpStatus::Optimal;
        out.x.assign(n_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) out.x[basis_[i]] = tab_[i][cols_];
        out.objective = -tab_[m_][cols_];
        return out;
    }

private:
    int m_, n_, cols_;
    std::vector<Rational> cost_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<int> basis_;

    bool run(int enter_limit) {
        while (true) {
            int c = -1;
            for (int j = 0; j < enter_limit; ++j)
                if (tab_[m_][j].sign() < 0) {
                    c = j;
                    break;
                }
            if (c < 0) return true;
            int r = -1;
            Rational best;
            for (int i = 0; i < m_; ++i) {
                if (tab_[i][c].sign() <= 0) continue;
                Rational ratio = tab_[i][cols_] / tab_[i][c];
                if (r < 0 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r < 0) return false;
            pivot(r, c);
        }
    }

    void pivot(int r, int c) {
        Rational inv = tab_[r][c];
        for (int j = 0; j <= cols_; ++j) tab_[r][j] /= inv;
        for (int i = 0; i <= m_; ++i) {
            if (i == r || tab_[i][c].is_zero()) continue;
            Rational f = tab_[i][c];
            for (int j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[r][j];
        }
        basis_[r] = c;
    }

    void purge_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            int c = -1;
            for (int j = 0; j < n_ + m_; ++j)
                if (!tab_[i][j].is_zero()) {
                    c = j;
                    break;
                }
            if (c >= 0) pivot(i, c);
            // an all-zero row is redundant; its artificial stays basic at zero
        }
    }
};

struct CoreLp {
    int n;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;

    void add_coalition_row(PlayerSet s, const Rational& v) {
        std::vector<Rational> row(n);
        for (int p = 0; p < n; ++p) row[p] = Rational(s >> p & 1 ? 1 : 0);
        A.push_back(row);
        b.push_back(v);
    }

    void add_equality(const std::vector<Rational>& row, const Rational& rhs) {
        A.push_back(row);
        b.push_back(rhs);
        std::vector<Rational> neg(n);
        for (int p = 0; p < n; ++p) neg[p] = -row[p];
        A.push_back(neg);
        b.push_back(-rhs);
    }

    LpResult minimize(int player) {
        std::vector<Rational> c(n);
        c[player] = Rational(1);
        return Simplex(A, b, c).solve();
    }
};

}  // namespace

std::optional<BlockingCoalition> check_core_membership(const CoalitionOracle& value, int n,
                                                       const Allocation& x, int scan_bound) {
    if (x.size() != n) throw NotAnAllocation("allocation has the wrong player count");
    PlayerSet all = full_coalition(n);
    if (x.total() != value(all)) throw NotAnAllocation("allocation does not sum to v(N)");
    if (n > scan_bound) throw BoundExceeded("coalition scan limited to n <= " + std::to_string(scan_bound));
    for (PlayerSet s = 1; s < all; ++s) {
        Rational xs = x.over(s);
        Rational vs = value(s);
        if (xs < vs) return BlockingCoalition{s, vs, xs};
    }
    return std::nullopt;
}

std::optional<BlockingCoalition> check_core_membership(const PartitionedGame& game,
                                                       const Allocation& x, int scan_bound) {
    if (game.width() == 1) {
        int n = game.player_count();
        if (x.size() != n) throw NotAnAllocation("allocation has the wrong player count");
        if (x.total() != game.grand_value()) throw NotAnAllocation("allocation does not sum to v(N)");
        for (int p = 0; p < n; ++p)
            if (x.values[p].sign() < 0)
                return BlockingCoalition{PlayerSet(1) << p, Rational(0), x.values[p]};
        for (const Edge& e : game.graph().edges()) {
            int p = game.partition().class_index_of(e.u);
            int q = game.partition().class_index_of(e.v);
            Rational sum = x.values[p] + x.values[q];
            if (sum < e.weight)
                return BlockingCoalition{(PlayerSet(1) << p) | (PlayerSet(1) << q), e.weight, sum};
        }
        return std::nullopt;
    }
    return check_core_membership([&](PlayerSet s) { return game.coalition_value(s); },
                                 game.player_count(), x, scan_bound);
}

std::optional<BlockingCoalition> check_core_membership(const BMatchingGame& game,
                                                       const Allocation& x, int scan_bound) {
    return check_core_membership([&](PlayerSet s) { return game.coalition_value(s); },
                                 game.player_count(), x, scan_bound);
}

std::optional<Allocation> find_core_allocation(const CoalitionOracle& value, int n,
                                               int player_bound) {
    if (n > player_bound)
        throw BoundExceeded("core search limited to n <= " + std::to_string(player_bound));
    PlayerSet all = full_coalition(n);
    Rational grand = value(all);

    CoreLp lp{n, {}, {}};
    for (int p = 0; p < n; ++p) lp.add_coalition_row(PlayerSet(1) << p, value(PlayerSet(1) << p));
    lp.add_equality(std::vector<Rational>(n, Rational(1)), grand);

    std::vector<Rational> current;
    for (int p = 0; p < n; ++p) {
        while (true) {
            LpResult res = lp.minimize(p);
            if (res.status == LpStatus::Infeasible) return std::nullopt;
            if (res.status == LpStatus::Unbounded)
                throw std::logic_error("core polytope cannot be unbounded");
            // cut generation: add violated coalition constraints and retry
            Allocation probe(res.x);
            int added = 0;
            for (PlayerSet s = 1; s < all && added < 4 * n; ++s) {
                if (probe.over(s) < value(s)) {
                    lp.add_coalition_row(s, value(s));
                    ++added;
                }
            }
            if (added == 0) {
                current = res.x;
                std::vector<Rational> pin(n);
                pin[p] = Rational(1);
                lp.add_equality(pin, res.objective);
                break;
            }
        }
    }
    return Allocation(current);
}

std::optional<Allocation> find_core_allocation(const PartitionedGame& game, int player_bound) {
    return find_core_allocation([&](PlayerSet s) { return game.coalition_value(s); },
                                game.player_count(), player_bound);
}

std::optional<Allocation> find_core_allocation(const BMatchingGame& game, int player_bound) {
    return find_core_allocation([&](PlayerSet s) { return game.coalition_value(s); },
                                game.player_count(), player_bound);
}

CertificateCheck verify_balanced_certificate(const CoalitionOracle& value, int n,
                                             const BalancedCertificate& cert) {
    PlayerSet all = full_coalition(n);
    for (const auto& [s, w] : cert.weights) {
        if (s == 0 || (s >> n) != 0) throw std::invalid_argument("certificate coalition out of range");
        if (w.sign() < 0 || Rational(1) < w)
            throw std::invalid_argument("certificate weight outside [0,1]");
    }
    for (int p = 0; p < n; ++p) {
        Rational sum;
        for (const auto& [s, w] : cert.weights)
            if (s >> p & 1) sum += w;
        if (sum != Rational(1)) throw Unbalanced(p);
    }
    Rational lhs;
    for (const auto& [s, w] : cert.weights) lhs += w * value(s);
    return lhs > value(all) ? CertificateCheck::CertifiesEmpty : CertificateCheck::DoesNotCertify;
}

CertificateCheck verify_balanced_certificate(const PartitionedGame& game,
                                             const BalancedCertificate& cert) {
    return verify_balanced_certificate([&](PlayerSet s) { return game.coalition_value(s); },
                                       game.player_count(), cert);
}

}  // namespace pmg
