#pragma once

#include <string>

#include "ringlab/construct.hpp"
#include "ringlab/expr.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

// Parse diagnostic positions are 1-based line:column.
struct SourcePos {
    int line = 1, col = 1;
};

class ParseError : public Error {
  public:
    ParseError(std::string msg, SourcePos pos)
        : Error(ErrorCode::parse_error, std::move(msg)), pos_(pos) {}
    SourcePos pos() const { return pos_; }

  private:
    SourcePos pos_;
};

// Text -> AST; throws ParseError with position on malformed input.
ExprPtr parse_ring_expr(const std::string& text);

// AST -> ring, enforcing every constructor precondition. Top-level results of
// size 1 are rejected (zero_ring). Construction notes:
//   Triv(R)          trivial extension with the regular bimodule
//   DT(R)            dual-numbers double extension, regular bimodule
//   FTri(R)          T(R, R, R) with the regular bimodule
//   FTri(R, S)       T(R, S, 0) with the zero bimodule
//   TrivMorita(A, B) regular bimodules when A and B are the same expression,
//                    zero bimodules otherwise
//   Quot(R)          R / J(R)
//   Quot(R, #a, ...) R / ideal generated by the listed elements
//   Corner(R, #e)    eRe, e idempotent
FiniteRing eval_expr(const ExprPtr& ast);

inline FiniteRing eval_ring(const std::string& text) { return eval_expr(parse_ring_expr(text)); }

// Resolve an endomorphism name ("id" | "frob" | "endo#k") against a ring.
std::shared_ptr<const Endomorphism> resolve_endo(const FiniteRing& r, const std::string& name);

}  // namespace ringlab
