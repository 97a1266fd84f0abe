#pragma once

// Internal tokenizer shared by the text-format parsers. Not installed.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "datavec/errors.hpp"
#include "datavec/numbers.hpp"

namespace datavec::textlex {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;          // identifier spelling or punctuation symbol
  Int number;                // set for Kind::Number
  std::size_t line = 1;
  std::size_t column = 1;
};

// Identifiers start with a letter, '_', '#', or any byte >= 0x80, and continue
// with those plus digits. Numbers are optionally signed decimal integers.
// Punctuation: { } [ ] ( ) : ; , and the arrow ->.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  bool try_punct(std::string_view sym) {
    if (tok_.kind == Token::Kind::Punct && tok_.text == sym) {
      advance();
      return true;
    }
    return false;
  }

  void expect_punct(std::string_view sym) {
    if (!try_punct(sym)) fail("expected '" + std::string(sym) + "'");
  }

  std::string expect_ident(std::string_view what) {
    if (tok_.kind != Token::Kind::Ident) fail("expected " + std::string(what));
    return next().text;
  }

  void expect_keyword(std::string_view word) {
    if (tok_.kind != Token::Kind::Ident || tok_.text != word)
      fail("expected '" + std::string(word) + "'");
    advance();
  }

  bool at_keyword(std::string_view word) const {
    return tok_.kind == Token::Kind::Ident && tok_.text == word;
  }

  Int expect_number(std::string_view what) {
    if (tok_.kind != Token::Kind::Number) fail("expected " + std::string(what));
    return next().number;
  }

  bool at_end() const { return tok_.kind == Token::Kind::End; }

  void expect_end() {
    if (!at_end()) fail("expected end of input");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(tok_.line, tok_.column, message);
  }

 private:
  static bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '#' || c >= 0x80;
  }
  static bool ident_cont(unsigned char c) { return ident_start(c) || std::isdigit(c); }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) step();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    const unsigned char c = static_cast<unsigned char>(src_[pos_]);
    if (ident_start(c)) {
      tok_.kind = Token::Kind::Ident;
      while (pos_ < src_.size() && ident_cont(static_cast<unsigned char>(src_[pos_]))) {
        tok_.text.push_back(src_[pos_]);
        step();
      }
      return;
    }
    const bool neg = c == '-' && pos_ + 1 < src_.size() &&
                     std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]));
    if (std::isdigit(c) || neg) {
      tok_.kind = Token::Kind::Number;
      std::string digits;
      if (neg) {
        digits.push_back('-');
        step();
      }
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits.push_back(src_[pos_]);
        step();
      }
      tok_.number = Int(digits);
      tok_.text = std::move(digits);
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      tok_.kind = Token::Kind::Punct;
      tok_.text = "->";
      step();
      step();
      return;
    }
    if (std::string_view("{}[]():;,").find(static_cast<char>(c)) != std::string_view::npos) {
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(1, static_cast<char>(c));
      step();
      return;
    }
    throw ParseError(line_, column_, "unexpected character");
  }

  void step() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token tok_;
};

}  // namespace datavec::textlex
