/// @file lexer.cc
#include "lexer.h"

#include <cctype>

namespace taskcon::dsl {

namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

void AppendUtf8(std::string& out, unsigned cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

std::string_view Describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kString: return "string";
    case TokenKind::kNumber: return "number";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kColon: return "':'";
    case TokenKind::kArrow: return "'->'";
    case TokenKind::kFatArrow: return "'=>'";
    case TokenKind::kLt: return "'<'";
    case TokenKind::kLe: return "'<='";
    case TokenKind::kGt: return "'>'";
    case TokenKind::kGe: return "'>='";
    case TokenKind::kEof: return "end of file";
  }
  return "token";
}

void Lexer::Advance() {
  char c = src_[pos_++];
  if (c == '\n') {
    ++line_;
    col_ = 1;
  } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
    ++col_;
  }
}

SourceSpan Lexer::Here() const { return SourceSpan{file_, line_, col_, line_, col_}; }

SourceSpan Lexer::SpanFrom(int line, int col) const {
  return SourceSpan{file_, line, col, line_, col_};
}

void Lexer::SkipBlanksAndComments() {
  while (!AtEnd()) {
    char c = Peek();
    if (IsBlank(c) || c == '\n') {
      Advance();
    } else if (c == '/' && Peek(1) == '/') {
      while (!AtEnd() && Peek() != '\n') Advance();
    } else {
      break;
    }
  }
}

std::string Lexer::LexString(int line, int col) {
  std::string out;
  Advance();  // opening quote
  while (true) {
    if (AtEnd() || Peek() == '\n') {
      throw SyntaxError("unterminated string literal", SpanFrom(line, col));
    }
    char c = Peek();
    if (c == '"') {
      Advance();
      return out;
    }
    if (c != '\\') {
      out += c;
      Advance();
      continue;
    }
    Advance();
    char e = Peek();
    switch (e) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 'u': {
        Advance();
        unsigned cp = 0;
        for (int i = 0; i < 4; ++i) {
          char h = Peek();
          if (!std::isxdigit(static_cast<unsigned char>(h))) {
            throw SyntaxError("malformed \\u escape", SpanFrom(line, col));
          }
          cp = cp * 16 + static_cast<unsigned>(
                             IsDigit(h) ? h - '0' : (std::tolower(h) - 'a' + 10));
          Advance();
        }
        AppendUtf8(out, cp);
        continue;
      }
      default:
        if (!AtEnd() && e != '\n') Advance();
        throw SyntaxError("unknown escape sequence in string", SpanFrom(line, col));
    }
    Advance();
  }
}

Token Lexer::Next() {
  SkipBlanksAndComments();
  Token tok;
  tok.depth = depth_;
  int line = line_;
  int col = col_;
  if (AtEnd()) {
    tok.kind = TokenKind::kEof;
    tok.span = Here();
    return tok;
  }
  char c = Peek();
  auto single = [&](TokenKind kind, int width) {
    std::string text(src_.substr(pos_, width));
    for (int i = 0; i < width; ++i) Advance();
    tok.kind = kind;
    tok.text = std::move(text);
    tok.span = SpanFrom(line, col);
  };
  if (IsIdentStart(c)) {
    std::size_t begin = pos_;
    while (!AtEnd() && IsIdentChar(Peek())) Advance();
    tok.kind = TokenKind::kIdent;
    tok.text = std::string(src_.substr(begin, pos_ - begin));
    tok.span = SpanFrom(line, col);
  } else if (IsDigit(c) || (c == '-' && IsDigit(Peek(1)))) {
    std::size_t begin = pos_;
    Advance();
    while (!AtEnd() && IsDigit(Peek())) Advance();
    if (Peek() == '.' && IsDigit(Peek(1))) {
      Advance();
      while (!AtEnd() && IsDigit(Peek())) Advance();
    }
    tok.kind = TokenKind::kNumber;
    tok.text = std::string(src_.substr(begin, pos_ - begin));
    tok.span = SpanFrom(line, col);
  } else if (c == '"') {
    tok.text = LexString(line, col);
    tok.kind = TokenKind::kString;
    tok.span = SpanFrom(line, col);
  } else if (c == '{') {
    single(TokenKind::kLBrace, 1);
    ++depth_;
  } else if (c == '}') {
    single(TokenKind::kRBrace, 1);
    --depth_;
  } else if (c == ':') {
    single(TokenKind::kColon, 1);
  } else if (c == '-' && Peek(1) == '>') {
    single(TokenKind::kArrow, 2);
  } else if (c == '=' && Peek(1) == '>') {
    single(TokenKind::kFatArrow, 2);
  } else if (c == '<') {
    Peek(1) == '=' ? single(TokenKind::kLe, 2) : single(TokenKind::kLt, 1);
  } else if (c == '>') {
    Peek(1) == '=' ? single(TokenKind::kGe, 2) : single(TokenKind::kGt, 1);
  } else {
    Advance();
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'",
                      SpanFrom(line, col));
  }
  return tok;
}

Token Lexer::NextUnitWord() {
  while (!AtEnd() && IsBlank(Peek())) Advance();
  int line = line_;
  int col = col_;
  std::size_t begin = pos_;
  while (!AtEnd()) {
    char c = Peek();
    if (IsBlank(c) || c == '\n' || c == '{' || c == '}' || c == '"' || c == ':')
      break;
    if (c == '/' && Peek(1) == '/') break;
    Advance();
  }
  if (pos_ == begin) {
    throw SyntaxError("expected unit after threshold", SpanFrom(line, col));
  }
  Token tok;
  tok.kind = TokenKind::kIdent;
  tok.text = std::string(src_.substr(begin, pos_ - begin));
  tok.span = SpanFrom(line, col);
  tok.depth = depth_;
  return tok;
}

}  // namespace taskcon::dsl
