#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ringlab/core.hpp"
#include "ringlab/expr.hpp"

namespace ringlab {

// Finite group as a Cayley table; identity is always id 0.
class GroupTable {
  public:
    std::size_t size() const { return n_; }
    Elem op(Elem a, Elem b) const { return tab_[std::size_t(a) * n_ + b]; }
    Elem identity() const { return 0; }
    Elem inverse(Elem a) const { return inv_[a]; }
    const std::string& label(Elem a) const { return labels_[a]; }
    const std::string& name() const { return name_; }

    // Exhaustive associativity/identity/inverse check; throws group_axiom.
    void verify() const;

    // True when |G| is a power of the single prime p (returned through p).
    bool is_p_group(std::uint64_t& p) const;

    // Cyclic factor orders when the table was built as a product of cyclic
    // groups; empty for hand-rolled tables.
    const std::vector<std::int64_t>& cyclic_orders() const { return orders_; }

    static std::shared_ptr<const GroupTable> cyclic(std::size_t n);
    static std::shared_ptr<const GroupTable> direct_product(
        const std::shared_ptr<const GroupTable>& a, const std::shared_ptr<const GroupTable>& b);
    static std::shared_ptr<const GroupTable> from_expr(const GroupExpr& g);
    static std::shared_ptr<const GroupTable> from_table(std::size_t n, std::vector<Elem> tab,
                                                        std::vector<std::string> labels,
                                                        std::string name);

  private:
    std::size_t n_ = 0;
    std::vector<Elem> tab_, inv_;
    std::vector<std::string> labels_;
    std::string name_;
    std::vector<std::int64_t> orders_;
};

}  // namespace ringlab
