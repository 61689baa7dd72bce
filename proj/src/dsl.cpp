#include "ringlab/dsl.hpp"

#include <cctype>

#include "ringlab/invariants.hpp"
#include "ringlab/structure.hpp"

namespace ringlab {

namespace {

enum class Tok { Ident, Int, LParen, RParen, Comma, Hash, X, End };

struct Token {
    Tok kind;
    std::string text;
    std::int64_t value = 0;
    SourcePos pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_ws();
        Token t;
        t.pos = pos_;
        if (i_ >= s_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = s_[i_];
        if (c == '(') return advance(t, Tok::LParen);
        if (c == ')') return advance(t, Tok::RParen);
        if (c == ',') return advance(t, Tok::Comma);
        if (c == '#') return advance(t, Tok::Hash);
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            t.kind = Tok::Int;
            t.text = s_.substr(i_, j - i_);
            t.value = std::stoll(t.text);
            bump(j - i_);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            // 'x' directly before 'C' is the group product operator
            if (c == 'x' && i_ + 1 < s_.size() && s_[i_ + 1] == 'C') return advance(t, Tok::X);
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) {
                if (j > i_ && s_[j] == 'x' && j + 1 < s_.size() && s_[j + 1] == 'C') break;
                ++j;
            }
            t.kind = Tok::Ident;
            t.text = s_.substr(i_, j - i_);
            bump(j - i_);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

  private:
    Token advance(Token t, Tok kind) {
        t.kind = kind;
        t.text = s_.substr(i_, 1);
        bump(1);
        return t;
    }
    void bump(std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (s_[i_] == '\n') {
                ++pos_.line;
                pos_.col = 1;
            } else {
                ++pos_.col;
            }
            ++i_;
        }
    }
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) bump(1);
    }

    const std::string& s_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) { shift(); }

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        expect(Tok::End, "end of input");
        return e;
    }

  private:
    void shift() { cur_ = lex_.next(); }

    [[noreturn]] void error(const std::string& want) {
        std::string got = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
        throw ParseError("expected " + want + ", found " + got + " at " +
                             std::to_string(cur_.pos.line) + ":" + std::to_string(cur_.pos.col),
                         cur_.pos);
    }

    void expect(Tok k, const std::string& what) {
        if (cur_.kind != k) error(what);
    }

    Token eat(Tok k, const std::string& what) {
        expect(k, what);
        Token t = cur_;
        shift();
        return t;
    }

    ExprPtr parse_expr() {
        Token name = eat(Tok::Ident, "a constructor name");
        ExprKind kind;
        if (!expr_kind_from_name(name.text, kind))
            throw ParseError("unknown constructor '" + name.text + "'", name.pos);
        eat(Tok::LParen, "'('");
        std::vector<ExprArg> args;
        if (cur_.kind != Tok::RParen) {
            args.push_back(parse_arg());
            while (cur_.kind == Tok::Comma) {
                shift();
                args.push_back(parse_arg());
            }
        }
        eat(Tok::RParen, "')'");
        return make_expr(kind, std::move(args));
    }

    ExprArg parse_arg() {
        if (cur_.kind == Tok::Int) {
            Token t = cur_;
            shift();
            return ExprArg{t.value};
        }
        if (cur_.kind == Tok::Hash) {
            shift();
            Token t = eat(Tok::Int, "an element id after '#'");
            return ExprArg{ElemLit{t.value}};
        }
        if (cur_.kind == Tok::Ident) {
            if (cur_.text == "C") return ExprArg{parse_group()};
            if (cur_.text == "id" || cur_.text == "frob") {
                Token t = cur_;
                shift();
                return ExprArg{EndoName{t.text}};
            }
            if (cur_.text == "endo") {
                shift();
                eat(Tok::Hash, "'#' after 'endo'");
                Token t = eat(Tok::Int, "an endomorphism index");
                return ExprArg{EndoName{"endo#" + std::to_string(t.value)}};
            }
            return ExprArg{parse_expr()};
        }
        error("an argument");
    }

    GroupExpr parse_group() {
        GroupExpr g;
        for (;;) {
            Token c = eat(Tok::Ident, "'C'");
            if (c.text != "C") throw ParseError("expected 'C' in group expression", c.pos);
            eat(Tok::LParen, "'('");
            Token n = eat(Tok::Int, "a cyclic order");
            eat(Tok::RParen, "')'");
            g.cyclic_orders.push_back(n.value);
            if (cur_.kind != Tok::X) break;
            shift();
        }
        return g;
    }

    Lexer lex_;
    Token cur_;
};

[[noreturn]] void arity(const RingExpr& e, const char* expected) {
    fail(ErrorCode::arity_mismatch,
         std::string(expr_kind_name(e.kind)) + ": expected " + expected);
}

std::int64_t get_int(const RingExpr& e, std::size_t i, const char* expected) {
    if (i >= e.args.size() || !std::holds_alternative<std::int64_t>(e.args[i]))
        arity(e, expected);
    return std::get<std::int64_t>(e.args[i]);
}

ExprPtr get_expr(const RingExpr& e, std::size_t i, const char* expected) {
    if (i >= e.args.size() || !std::holds_alternative<ExprPtr>(e.args[i])) arity(e, expected);
    return std::get<ExprPtr>(e.args[i]);
}

Elem get_elem(const RingExpr& e, std::size_t i, const char* expected) {
    if (i >= e.args.size() || !std::holds_alternative<ElemLit>(e.args[i])) arity(e, expected);
    std::int64_t v = std::get<ElemLit>(e.args[i]).id;
    if (v < 0) fail(ErrorCode::bad_argument, "element ids are non-negative");
    return Elem(v);
}

std::string get_endo_name(const RingExpr& e, std::size_t i, const char* expected) {
    if (i >= e.args.size() || !std::holds_alternative<EndoName>(e.args[i])) arity(e, expected);
    return std::get<EndoName>(e.args[i]).name;
}

GroupExpr get_group(const RingExpr& e, std::size_t i, const char* expected) {
    if (i >= e.args.size() || !std::holds_alternative<GroupExpr>(e.args[i])) arity(e, expected);
    return std::get<GroupExpr>(e.args[i]);
}

FiniteRing eval_rec(const RingExpr& e);

FiniteRing eval_ring_arg(const RingExpr& e, std::size_t i, const char* expected) {
    return eval_rec(*get_expr(e, i, expected));
}

FiniteRing eval_rec(const RingExpr& e) {
    switch (e.kind) {
        case ExprKind::Zmod:
            if (e.args.size() != 1) arity(e, "Zmod(n)");
            return zmod(get_int(e, 0, "Zmod(n)"));
        case ExprKind::GF:
            if (e.args.size() != 2) arity(e, "GF(p, k)");
            return gf(get_int(e, 0, "GF(p, k)"), get_int(e, 1, "GF(p, k)"));
        case ExprKind::Prod: {
            if (e.args.empty()) arity(e, "Prod(R1, ...) with at least one factor");
            std::vector<FiniteRing> factors;
            for (std::size_t i = 0; i < e.args.size(); ++i)
                factors.push_back(eval_ring_arg(e, i, "ring factors"));
            return product(factors);
        }
        case ExprKind::Mat:
            if (e.args.size() != 2) arity(e, "Mat(k, R)");
            return matrix_ring(int(get_int(e, 0, "Mat(k, R)")), eval_ring_arg(e, 1, "Mat(k, R)"));
        case ExprKind::UT:
            if (e.args.size() != 2) arity(e, "UT(k, R)");
            return upper_triangular(int(get_int(e, 0, "UT(k, R)")),
                                    eval_ring_arg(e, 1, "UT(k, R)"));
        case ExprKind::SkewUT: {
            if (e.args.size() != 3) arity(e, "SkewUT(k, R, endo)");
            FiniteRing r = eval_ring_arg(e, 1, "SkewUT(k, R, endo)");
            auto alpha = resolve_endo(r, get_endo_name(e, 2, "SkewUT(k, R, endo)"));
            return skew_triangular(int(get_int(e, 0, "SkewUT(k, R, endo)")), r, alpha);
        }
        case ExprKind::Triv:
            if (e.args.size() != 1) arity(e, "Triv(R)");
            return trivial_extension(eval_ring_arg(e, 0, "Triv(R)"));
        case ExprKind::DT:
            if (e.args.size() != 1) arity(e, "DT(R)");
            return dt_extension(eval_ring_arg(e, 0, "DT(R)"));
        case ExprKind::PolyQ: {
            if (e.args.size() != 3) arity(e, "PolyQ(R, endo, n)");
            FiniteRing r = eval_ring_arg(e, 0, "PolyQ(R, endo, n)");
            auto alpha = resolve_endo(r, get_endo_name(e, 1, "PolyQ(R, endo, n)"));
            return poly_quot(r, alpha, int(get_int(e, 2, "PolyQ(R, endo, n)")));
        }
        case ExprKind::GrpRing: {
            if (e.args.size() != 2) arity(e, "GrpRing(R, G)");
            FiniteRing r = eval_ring_arg(e, 0, "GrpRing(R, G)");
            return group_ring(r, GroupTable::from_expr(get_group(e, 1, "GrpRing(R, G)")));
        }
        case ExprKind::FTri: {
            if (e.args.size() == 1) {
                FiniteRing r = eval_ring_arg(e, 0, "FTri(R) or FTri(R, S)");
                return formal_triangular(r, r, Bimodule::regular(r));
            }
            if (e.args.size() != 2) arity(e, "FTri(R) or FTri(R, S)");
            FiniteRing r = eval_ring_arg(e, 0, "FTri(R, S)");
            FiniteRing s = eval_ring_arg(e, 1, "FTri(R, S)");
            return formal_triangular(r, s, Bimodule::zero_module(r, s));
        }
        case ExprKind::Ks:
            if (e.args.size() != 2) arity(e, "Ks(R, #s)");
            return k_s(eval_ring_arg(e, 0, "Ks(R, #s)"), get_elem(e, 1, "Ks(R, #s)"));
        case ExprKind::Mns:
            if (e.args.size() != 3) arity(e, "Mns(k, R, #s)");
            return m_n_s(int(get_int(e, 0, "Mns(k, R, #s)")),
                         eval_ring_arg(e, 1, "Mns(k, R, #s)"), get_elem(e, 2, "Mns(k, R, #s)"));
        case ExprKind::TrivMorita: {
            if (e.args.size() != 2) arity(e, "TrivMorita(A, B)");
            FiniteRing a = eval_ring_arg(e, 0, "TrivMorita(A, B)");
            if (expr_equal(get_expr(e, 0, ""), get_expr(e, 1, "")))
                return trivial_morita(a, a, nullptr, nullptr);
            FiniteRing b = eval_ring_arg(e, 1, "TrivMorita(A, B)");
            return trivial_morita(a, b, nullptr, nullptr);
        }
        case ExprKind::Quot: {
            if (e.args.empty()) arity(e, "Quot(R) or Quot(R, #a, ...)");
            FiniteRing r = eval_ring_arg(e, 0, "Quot(R, ...)");
            Subset ideal = [&] {
                if (e.args.size() == 1) return jacobson(r);
                std::vector<Elem> gens;
                for (std::size_t i = 1; i < e.args.size(); ++i)
                    gens.push_back(get_elem(e, i, "Quot(R, #a, ...)"));
                return ideal_generated(r, gens);
            }();
            return quotient(r, ideal).ring;
        }
        case ExprKind::Corner: {
            if (e.args.size() != 2) arity(e, "Corner(R, #e)");
            FiniteRing r = eval_ring_arg(e, 0, "Corner(R, #e)");
            return corner(r, get_elem(e, 1, "Corner(R, #e)"));
        }
    }
    fail(ErrorCode::bad_argument, "unhandled expression kind");
}

}  // namespace

ExprPtr parse_ring_expr(const std::string& text) { return Parser(text).parse(); }

FiniteRing eval_expr(const ExprPtr& ast) {
    if (!ast) fail(ErrorCode::bad_argument, "null expression");
    FiniteRing r = eval_rec(*ast);
    if (r.size() == 1)
        fail(ErrorCode::zero_ring, "expression evaluates to the zero ring");
    if (!r.provenance().expr) r.set_provenance_expr(ast);
    return r;
}

std::shared_ptr<const Endomorphism> resolve_endo(const FiniteRing& r, const std::string& name) {
    if (name == "id") return identity_endo(r);
    if (name == "frob") return frobenius_endo(r);
    if (name.rfind("endo#", 0) == 0) {
        std::size_t k = std::stoul(name.substr(5));
        auto endos = endomorphisms(r);
        if (k >= endos.size())
            fail(ErrorCode::bad_argument, "ring has only " + std::to_string(endos.size()) +
                                              " endomorphisms, requested endo#" +
                                              std::to_string(k));
        return endos[k];
    }
    fail(ErrorCode::unknown_name, "unknown endomorphism name: " + name);
}

}  // namespace ringlab
