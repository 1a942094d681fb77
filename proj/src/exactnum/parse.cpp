#include <cctype>
#include <string>

#include "tsurf/exactnum/field.hpp"

namespace tsurf {

namespace {

class Parser {
 public:
  Parser(const TowerPtr& tower, std::string_view text) : tower_(tower), text_(text) {}

  FieldElem run() {
    FieldElem v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::parse_error, "cannot parse element '" + std::string(text_) + "': " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElem expr() {
    FieldElem v = term();
    while (true) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  FieldElem term() {
    FieldElem v = unary();
    while (true) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }

  FieldElem unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  FieldElem power() {
    FieldElem base = atom();
    if (!eat('^')) return base;
    bool negative = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 6) fail("bad exponent");
    long k = std::stol(std::string(text_.substr(start, pos_ - start)));
    return base.pow(negative ? -k : k);
  }

  FieldElem atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElem v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return FieldElem(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (!tower_) fail("unknown generator '" + std::string(name) + "'");
      return tower_->gen(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const TowerPtr& tower_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElem parse_element(const TowerPtr& tower, std::string_view text) { return Parser(tower, text).run(); }

}  // namespace tsurf
