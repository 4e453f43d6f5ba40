#include "lqg/term_syntax.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "lqg/error.hpp"

namespace lqg {

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, "term syntax: " + what + " at offset " +
                                            std::to_string(pos_) + " in '" +
                                            std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool variable_index(const std::string& name, std::size_t& index) {
    if (name.size() < 2 || name[0] != 'x') return false;
    index = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
      index = index * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    return true;
  }

  Term term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      const std::string name = atom();
      std::size_t index = 0;
      if (variable_index(name, index)) {
        if (index == 0 || name[1] == '0') fail("variables are numbered x1, x2, ...");
        return Term::variable(index);
      }
      return Term::apply(name);
    }
    ++pos_;
    skip_space();
    const std::string op = atom();
    std::size_t index = 0;
    if (variable_index(op, index)) fail("variable '" + op + "' used as operation");
    std::vector<Term> args;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(term());
    }
    return Term::apply(op, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

}  // namespace lqg
