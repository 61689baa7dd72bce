#include "ringlab/group.hpp"

#include <sstream>

namespace ringlab {

void GroupTable::verify() const {
    const std::size_t n = n_;
    for (std::size_t a = 0; a < n; ++a) {
        if (op(0, Elem(a)) != a || op(Elem(a), 0) != a)
            fail(ErrorCode::group_axiom, "identity fails at " + labels_[a]);
        if (op(Elem(a), inv_[a]) != 0 || op(inv_[a], Elem(a)) != 0)
            fail(ErrorCode::group_axiom, "inverse fails at " + labels_[a]);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (op(op(Elem(a), Elem(b)), Elem(c)) != op(Elem(a), op(Elem(b), Elem(c))))
                    fail(ErrorCode::group_axiom, "associativity fails");
}

bool GroupTable::is_p_group(std::uint64_t& p) const {
    std::uint64_t n = n_;
    if (n == 1) return false;
    std::uint64_t d = 2;
    while (n % d != 0) ++d;
    while (n % d == 0) n /= d;
    if (n != 1) return false;
    p = d;
    return true;
}

std::shared_ptr<const GroupTable> GroupTable::cyclic(std::size_t n) {
    if (n < 1) fail(ErrorCode::bad_argument, "cyclic group order must be >= 1");
    auto g = std::make_shared<GroupTable>();
    g->n_ = n;
    g->tab_.resize(n * n);
    g->inv_.resize(n);
    g->labels_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        g->inv_[a] = Elem((n - a) % n);
        if (a == 0)
            g->labels_[a] = "e";
        else if (a == 1)
            g->labels_[a] = "g";
        else
            g->labels_[a] = "g^" + std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) g->tab_[a * n + b] = Elem((a + b) % n);
    }
    g->name_ = "C(" + std::to_string(n) + ")";
    g->orders_ = {std::int64_t(n)};
    return g;
}

std::shared_ptr<const GroupTable> GroupTable::direct_product(
    const std::shared_ptr<const GroupTable>& a, const std::shared_ptr<const GroupTable>& b) {
    auto g = std::make_shared<GroupTable>();
    const std::size_t na = a->size(), nb = b->size(), n = na * nb;
    g->n_ = n;
    g->tab_.resize(n * n);
    g->inv_.resize(n);
    g->labels_.resize(n);
    auto enc = [na](Elem x, Elem y) { return Elem(std::size_t(y) * na + x); };
    for (std::size_t i = 0; i < n; ++i) {
        Elem xa = Elem(i % na), xb = Elem(i / na);
        g->inv_[i] = enc(a->inverse(xa), b->inverse(xb));
        g->labels_[i] = "(" + a->label(xa) + "," + b->label(xb) + ")";
        for (std::size_t j = 0; j < n; ++j) {
            Elem ya = Elem(j % na), yb = Elem(j / na);
            g->tab_[i * n + j] = enc(a->op(xa, ya), b->op(xb, yb));
        }
    }
    g->name_ = a->name() + "x" + b->name();
    if (!a->orders_.empty() && !b->orders_.empty()) {
        g->orders_ = a->orders_;
        g->orders_.insert(g->orders_.end(), b->orders_.begin(), b->orders_.end());
    }
    return g;
}

std::shared_ptr<const GroupTable> GroupTable::from_table(std::size_t n, std::vector<Elem> tab,
                                                         std::vector<std::string> labels,
                                                         std::string name) {
    auto g = std::make_shared<GroupTable>();
    g->n_ = n;
    g->tab_ = std::move(tab);
    g->labels_ = std::move(labels);
    g->name_ = std::move(name);
    g->inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n; ++b)
            if (g->op(Elem(a), Elem(b)) == 0 && g->op(Elem(b), Elem(a)) == 0) {
                g->inv_[a] = Elem(b);
                found = true;
                break;
            }
        if (!found) fail(ErrorCode::group_axiom, "element without inverse");
    }
    return g;
}

std::shared_ptr<const GroupTable> GroupTable::from_expr(const GroupExpr& ge) {
    if (ge.cyclic_orders.empty()) fail(ErrorCode::bad_argument, "empty group expression");
    std::shared_ptr<const GroupTable> g;
    for (auto o : ge.cyclic_orders) {
        if (o < 1) fail(ErrorCode::bad_argument, "cyclic order must be >= 1");
        auto c = cyclic(std::size_t(o));
        g = g ? direct_product(g, c) : c;
    }
    return g;
}

}  // namespace ringlab
