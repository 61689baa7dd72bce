#include "ringlab/expr.hpp"

#include <sstream>

namespace ringlab {

namespace {

struct KindName {
    ExprKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {ExprKind::Zmod, "Zmod"},     {ExprKind::GF, "GF"},
    {ExprKind::Prod, "Prod"},     {ExprKind::Mat, "Mat"},
    {ExprKind::UT, "UT"},         {ExprKind::SkewUT, "SkewUT"},
    {ExprKind::Triv, "Triv"},     {ExprKind::DT, "DT"},
    {ExprKind::PolyQ, "PolyQ"},   {ExprKind::GrpRing, "GrpRing"},
    {ExprKind::FTri, "FTri"},     {ExprKind::Ks, "Ks"},
    {ExprKind::Mns, "Mns"},       {ExprKind::TrivMorita, "TrivMorita"},
    {ExprKind::Quot, "Quot"},     {ExprKind::Corner, "Corner"},
};

}  // namespace

const char* expr_kind_name(ExprKind k) {
    for (const auto& kn : kKindNames)
        if (kn.kind == k) return kn.name;
    return "?";
}

bool expr_kind_from_name(const std::string& s, ExprKind& out) {
    for (const auto& kn : kKindNames) {
        if (s == kn.name) {
            out = kn.kind;
            return true;
        }
    }
    return false;
}

ExprPtr make_expr(ExprKind kind, std::vector<ExprArg> args) {
    return std::make_shared<const RingExpr>(RingExpr{kind, std::move(args)});
}

std::string to_string(const GroupExpr& g) {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.cyclic_orders.size(); ++i) {
        if (i) os << "x";
        os << "C(" << g.cyclic_orders[i] << ")";
    }
    return os.str();
}

std::string to_string(const RingExpr& e) {
    std::ostringstream os;
    os << expr_kind_name(e.kind) << "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        const ExprArg& a = e.args[i];
        if (auto* n = std::get_if<std::int64_t>(&a))
            os << *n;
        else if (auto* sub = std::get_if<ExprPtr>(&a))
            os << to_string(**sub);
        else if (auto* g = std::get_if<GroupExpr>(&a))
            os << to_string(*g);
        else if (auto* el = std::get_if<ElemLit>(&a))
            os << "#" << el->id;
        else if (auto* en = std::get_if<EndoName>(&a))
            os << en->name;
    }
    os << ")";
    return os.str();
}

bool expr_equal(const RingExpr& a, const RingExpr& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const ExprArg& x = a.args[i];
        const ExprArg& y = b.args[i];
        if (x.index() != y.index()) return false;
        if (auto* n = std::get_if<std::int64_t>(&x)) {
            if (*n != std::get<std::int64_t>(y)) return false;
        } else if (auto* sub = std::get_if<ExprPtr>(&x)) {
            if (!expr_equal(**sub, *std::get<ExprPtr>(y))) return false;
        } else if (auto* g = std::get_if<GroupExpr>(&x)) {
            if (!(*g == std::get<GroupExpr>(y))) return false;
        } else if (auto* el = std::get_if<ElemLit>(&x)) {
            if (!(*el == std::get<ElemLit>(y))) return false;
        } else if (auto* en = std::get_if<EndoName>(&x)) {
            if (!(*en == std::get<EndoName>(y))) return false;
        }
    }
    return true;
}

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > caps::max_ring_size / base)
            fail(ErrorCode::size_overflow, "ring would exceed the size guard");
        r *= base;
    }
    return r;
}

std::int64_t int_arg(const RingExpr& e, std::size_t i) {
    if (i >= e.args.size() || !std::holds_alternative<std::int64_t>(e.args[i]))
        fail(ErrorCode::arity_mismatch,
             std::string(expr_kind_name(e.kind)) + ": expected integer argument");
    return std::get<std::int64_t>(e.args[i]);
}

const RingExpr& expr_arg(const RingExpr& e, std::size_t i) {
    if (i >= e.args.size() || !std::holds_alternative<ExprPtr>(e.args[i]))
        fail(ErrorCode::arity_mismatch,
             std::string(expr_kind_name(e.kind)) + ": expected ring argument");
    return *std::get<ExprPtr>(e.args[i]);
}

}  // namespace

std::size_t predicted_size(const RingExpr& e) {
    switch (e.kind) {
        case ExprKind::Zmod: return std::size_t(int_arg(e, 0));
        case ExprKind::GF:
            return checked_pow(std::size_t(int_arg(e, 0)), std::size_t(int_arg(e, 1)));
        case ExprKind::Prod: {
            std::size_t s = 1;
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                std::size_t f = predicted_size(expr_arg(e, i));
                if (f != 0 && s > caps::max_ring_size / f)
                    fail(ErrorCode::size_overflow, "ring would exceed the size guard");
                s *= f;
            }
            return s;
        }
        case ExprKind::Mat: {
            std::size_t k = std::size_t(int_arg(e, 0));
            return checked_pow(predicted_size(expr_arg(e, 1)), k * k);
        }
        case ExprKind::UT: {
            std::size_t k = std::size_t(int_arg(e, 0));
            return checked_pow(predicted_size(expr_arg(e, 1)), k * (k + 1) / 2);
        }
        case ExprKind::SkewUT:
            return checked_pow(predicted_size(expr_arg(e, 1)), std::size_t(int_arg(e, 0)));
        case ExprKind::Triv: return checked_pow(predicted_size(expr_arg(e, 0)), 2);
        case ExprKind::DT: return checked_pow(predicted_size(expr_arg(e, 0)), 4);
        case ExprKind::PolyQ:
            return checked_pow(predicted_size(expr_arg(e, 0)), std::size_t(int_arg(e, 2)));
        case ExprKind::GrpRing: {
            std::size_t g = 1;
            if (e.args.size() > 1)
                if (auto* ge = std::get_if<GroupExpr>(&e.args[1]))
                    for (auto o : ge->cyclic_orders) g *= std::size_t(o);
            return checked_pow(predicted_size(expr_arg(e, 0)), g);
        }
        case ExprKind::FTri: {
            if (e.args.size() == 1) return checked_pow(predicted_size(expr_arg(e, 0)), 3);
            std::size_t a = predicted_size(expr_arg(e, 0));
            std::size_t b = predicted_size(expr_arg(e, 1));
            if (a != 0 && b > caps::max_ring_size / a)
                fail(ErrorCode::size_overflow, "ring would exceed the size guard");
            return a * b;  // zero bimodule
        }
        case ExprKind::Ks: return checked_pow(predicted_size(expr_arg(e, 0)), 4);
        case ExprKind::Mns: {
            std::size_t k = std::size_t(int_arg(e, 0));
            return checked_pow(predicted_size(expr_arg(e, 1)), k * k);
        }
        case ExprKind::TrivMorita: {
            std::size_t a = predicted_size(expr_arg(e, 0));
            std::size_t b = predicted_size(expr_arg(e, 1));
            bool same = expr_equal(expr_arg(e, 0), expr_arg(e, 1));
            // regular bimodules when both sides coincide, zero otherwise
            std::size_t m = same ? a : 1, n = same ? b : 1;
            std::size_t s = a;
            for (std::size_t f : {m, n, b}) {
                if (f != 0 && s > caps::max_ring_size / f)
                    fail(ErrorCode::size_overflow, "ring would exceed the size guard");
                s *= f;
            }
            return s;
        }
        // Upper bounds; the real size needs evaluation.
        case ExprKind::Quot: return predicted_size(expr_arg(e, 0));
        case ExprKind::Corner: return predicted_size(expr_arg(e, 0));
    }
    fail(ErrorCode::bad_argument, "unhandled expression kind");
}

}  // namespace ringlab
