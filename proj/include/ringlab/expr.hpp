#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ringlab/core.hpp"

namespace ringlab {

// AST of the ring-construction DSL. Grammar:
//   expr    := name "(" args ")"
//   args    := (arg ("," arg)*)?
//   arg     := integer | expr | group | "#" integer | endoname
//   group   := "C" "(" integer ")" | group "x" group
//   endoname:= "id" | "frob" | "endo" "#" integer

enum class ExprKind {
    Zmod,
    GF,
    Prod,
    Mat,
    UT,
    SkewUT,
    Triv,
    DT,
    PolyQ,
    GrpRing,
    FTri,
    Ks,
    Mns,
    TrivMorita,
    Quot,
    Corner,
};

const char* expr_kind_name(ExprKind k);
bool expr_kind_from_name(const std::string& s, ExprKind& out);

struct RingExpr;
using ExprPtr = std::shared_ptr<const RingExpr>;

// A product of cyclic groups, e.g. C(2)xC(2). The grammar admits nothing else.
struct GroupExpr {
    std::vector<std::int64_t> cyclic_orders;
    bool operator==(const GroupExpr& o) const { return cyclic_orders == o.cyclic_orders; }
};

struct ElemLit {
    std::int64_t id = 0;
    bool operator==(const ElemLit& o) const { return id == o.id; }
};

struct EndoName {
    std::string name;  // "id", "frob", or "endo#<k>"
    bool operator==(const EndoName& o) const { return name == o.name; }
};

using ExprArg = std::variant<std::int64_t, ExprPtr, GroupExpr, ElemLit, EndoName>;

struct RingExpr {
    ExprKind kind;
    std::vector<ExprArg> args;
};

ExprPtr make_expr(ExprKind kind, std::vector<ExprArg> args);

std::string to_string(const GroupExpr& g);
std::string to_string(const RingExpr& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

bool expr_equal(const RingExpr& a, const RingExpr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_equal(*a, *b); }

// Element count the expression will evaluate to, without building anything.
// Used by corpus expansion filters; throws on overflow past max_ring_size.
std::size_t predicted_size(const RingExpr& e);

}  // namespace ringlab
