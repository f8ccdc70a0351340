/// @file lexer.h
/// Tokenizer for `.tac` sources. Internal to the library.
#ifndef TASKCON_SRC_LEXER_H_
#define TASKCON_SRC_LEXER_H_

#include <string>
#include <string_view>

#include "taskcon/error.h"
#include "taskcon/model.h"

namespace taskcon::dsl {

enum class TokenKind {
  kIdent,
  kString,
  kNumber,
  kLBrace,
  kRBrace,
  kColon,
  kArrow,     // ->
  kFatArrow,  // =>
  kLt,
  kLe,
  kGt,
  kGe,
  kEof,
};

std::string_view Describe(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEof;
  std::string text;  // identifier, decoded string, number or operator
  SourceSpan span;
  int depth = 0;  // brace depth before this token
};

/// Raised for lexical and grammatical errors; the parser turns it into a
/// diagnostic and resynchronizes.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, SourceSpan span)
      : Error(msg), span_(std::move(span)) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

class Lexer {
 public:
  Lexer(std::string_view source, std::string file)
      : src_(source), file_(std::move(file)) {}

  /// Always advances past the offending input before throwing.
  Token Next();

  /// Reads a UNITWORD starting after blanks on the current line.
  Token NextUnitWord();

  /// Span of a zero-width point at the current position.
  SourceSpan Here() const;

  void ResetDepth() { depth_ = 0; }

 private:
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool AtEnd() const { return pos_ >= src_.size(); }
  void Advance();
  void SkipBlanksAndComments();
  SourceSpan SpanFrom(int line, int col) const;
  std::string LexString(int line, int col);

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
};

}  // namespace taskcon::dsl

#endif  // TASKCON_SRC_LEXER_H_
