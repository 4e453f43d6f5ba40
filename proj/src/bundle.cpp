#include "lqg/bundle.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <regex>
#include <sstream>
#include <vector>

namespace lqg {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string text;  // trimmed raw text, for [meta]
};

struct Section {
  std::size_t header_line = 0;
  std::vector<Line> lines;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool is_variable_name(std::string_view s) {
  static const std::regex pattern("x[1-9][0-9]*");
  return std::regex_match(s.begin(), s.end(), pattern);
}

const std::vector<std::string_view> kSections = {
    "meta",         "lattice.elements", "lattice.covers", "lattice.order",
    "algebra.carrier", "algebra.ops",   "equality.table"};

class Reader {
 public:
  explicit Reader(std::string_view text) { scan(text); }

  Bundle read() {
    BundleMeta meta = read_meta();
    auto lattice = read_lattice();
    auto algebra = read_algebra();
    auto equality = read_equality(lattice, algebra);
    return Bundle{std::move(meta), std::move(equality)};
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& message,
                         std::size_t line, const std::string& section) const {
    std::string where = line ? "line " + std::to_string(line) + ": " : "";
    throw ParseError(kind, where + message, line, section);
  }

  void scan(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    bool seen_magic = false;
    Section* current = nullptr;
    while (std::getline(in, raw)) {
      ++number;
      const std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (!seen_magic) {
        const auto tokens = split(line);
        if (tokens.size() != 2 || tokens[0] != kBundleMagic ||
            tokens[1] != std::to_string(kBundleVersion)) {
          fail(ErrorKind::SyntaxError,
               "expected header '" + std::string(kBundleMagic) + " " +
                   std::to_string(kBundleVersion) + "'",
               number, "");
        }
        seen_magic = true;
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') {
          fail(ErrorKind::SyntaxError, "unterminated section header", number, "");
        }
        const std::string name = trim(line.substr(1, line.size() - 2));
        if (std::find(kSections.begin(), kSections.end(), name) ==
            kSections.end()) {
          fail(ErrorKind::SyntaxError, "unknown section [" + name + "]", number,
               name);
        }
        if (sections_.count(name)) {
          fail(ErrorKind::SyntaxError, "section [" + name + "] repeated", number,
               name);
        }
        current = &sections_[name];
        current->header_line = number;
        continue;
      }
      if (!current) {
        fail(ErrorKind::SyntaxError, "content outside of any section", number, "");
      }
      current->lines.push_back(Line{number, split(line), line});
    }
    if (!seen_magic) {
      fail(ErrorKind::SyntaxError, "empty document", 0, "");
    }
  }

  const Section& require(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) {
      fail(ErrorKind::SyntaxError, "missing section [" + name + "]", 0, name);
    }
    return it->second;
  }

  std::vector<std::string> names_in(const std::string& section) const {
    std::vector<std::string> out;
    for (const auto& l : require(section).lines) {
      for (const auto& t : l.tokens) {
        if (std::find(out.begin(), out.end(), t) != out.end()) {
          fail(ErrorKind::DuplicateName, "duplicate name '" + t + "'", l.number,
               section);
        }
        out.push_back(t);
      }
    }
    return out;
  }

  BundleMeta read_meta() const {
    BundleMeta meta;
    auto it = sections_.find("meta");
    if (it == sections_.end()) return meta;
    for (const auto& l : it->second.lines) {
      const auto eq = l.text.find('=');
      if (eq == std::string::npos) {
        fail(ErrorKind::SyntaxError, "expected 'key = value'", l.number, "meta");
      }
      const std::string key = trim(l.text.substr(0, eq));
      std::string value = trim(l.text.substr(eq + 1));
      if (key == "name") {
        meta.name = std::move(value);
      } else if (key == "description") {
        meta.description = std::move(value);
      } else {
        fail(ErrorKind::SyntaxError, "unknown metadata key '" + key + "'",
             l.number, "meta");
      }
    }
    return meta;
  }

  std::shared_ptr<const FiniteLattice> read_lattice() const {
    auto names = names_in("lattice.elements");
    const bool covers = sections_.count("lattice.covers") > 0;
    const bool order = sections_.count("lattice.order") > 0;
    if (covers == order) {
      fail(ErrorKind::SyntaxError,
           "exactly one of [lattice.covers] and [lattice.order] is required", 0,
           "lattice");
    }
    const std::string section = covers ? "lattice.covers" : "lattice.order";
    std::vector<FiniteLattice::NamePair> pairs;
    for (const auto& l : require(section).lines) {
      if (l.tokens.size() != 2) {
        fail(ErrorKind::SyntaxError, "expected 'lower upper'", l.number, section);
      }
      for (const auto& t : l.tokens) {
        if (std::find(names.begin(), names.end(), t) == names.end()) {
          fail(ErrorKind::UnknownName, "unknown lattice element '" + t + "'",
               l.number, section);
        }
      }
      pairs.emplace_back(l.tokens[0], l.tokens[1]);
    }
    try {
      return std::make_shared<const FiniteLattice>(FiniteLattice::build(
          std::move(names), pairs,
          covers ? RelationKind::Cover : RelationKind::Order));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.kind(), e.what(), 0, "lattice");
    }
  }

  std::shared_ptr<const FiniteAlgebra> read_algebra() const {
    const auto carrier = names_in("algebra.carrier");
    const std::size_t n = carrier.size();
    auto element = [&](const std::string& name, const Line& l) -> Elem {
      auto it = std::find(carrier.begin(), carrier.end(), name);
      if (it == carrier.end()) {
        fail(ErrorKind::UnknownName, "unknown carrier element '" + name + "'",
             l.number, "algebra.ops");
      }
      return static_cast<Elem>(it - carrier.begin());
    };

    std::vector<Operation> ops;
    std::vector<std::vector<Elem>> tables;
    const auto& lines = require("algebra.ops").lines;
    std::size_t i = 0;
    while (i < lines.size()) {
      const Line& header = lines[i++];
      int arity = -1;
      if (header.tokens.size() == 3 && header.tokens[0] == "op") {
        const auto& a = header.tokens[2];
        std::from_chars(a.data(), a.data() + a.size(), arity);
      }
      if (arity < 0 || arity > 2) {
        fail(ErrorKind::SyntaxError, "expected 'op NAME ARITY' with arity 0-2",
             header.number, "algebra.ops");
      }
      const std::string& name = header.tokens[1];
      if (is_variable_name(name) ||
          name.find_first_of("()") != std::string::npos) {
        fail(ErrorKind::SyntaxError,
             "operation name '" + name + "' clashes with term syntax",
             header.number, "algebra.ops");
      }
      const std::size_t rows = arity == 2 ? n : 1;
      const std::size_t cols = arity == 0 ? 1 : n;
      std::vector<Elem> table;
      for (std::size_t r = 0; r < rows; ++r) {
        if (i >= lines.size()) {
          fail(ErrorKind::DimensionMismatch,
               "table of '" + name + "' has too few rows", header.number,
               "algebra.ops");
        }
        const Line& row = lines[i++];
        if (row.tokens.size() != cols) {
          fail(ErrorKind::DimensionMismatch,
               "table row of '" + name + "' has " +
                   std::to_string(row.tokens.size()) + " entries, expected " +
                   std::to_string(cols),
               row.number, "algebra.ops");
        }
        for (const auto& t : row.tokens) table.push_back(element(t, row));
      }
      ops.push_back({name, arity});
      tables.push_back(std::move(table));
    }
    try {
      return std::make_shared<const FiniteAlgebra>(
          carrier, Signature(std::move(ops)), std::move(tables));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.kind(), e.what(), 0, "algebra");
    }
  }

  LRelation read_equality(const std::shared_ptr<const FiniteLattice>& lattice,
                          const std::shared_ptr<const FiniteAlgebra>& algebra) const {
    const auto& section = require("equality.table");
    const std::size_t n = algebra->size();
    if (section.lines.size() != n) {
      fail(ErrorKind::DimensionMismatch,
           "equality table has " + std::to_string(section.lines.size()) +
               " rows, expected " + std::to_string(n),
           section.header_line, "equality.table");
    }
    std::vector<LatticeElt> values;
    for (const auto& l : section.lines) {
      if (l.tokens.size() != n) {
        fail(ErrorKind::DimensionMismatch,
             "equality row has " + std::to_string(l.tokens.size()) +
                 " entries, expected " + std::to_string(n),
             l.number, "equality.table");
      }
      for (const auto& t : l.tokens) {
        auto v = lattice->find(t);
        if (!v) {
          fail(ErrorKind::UnknownName, "unknown lattice element '" + t + "'",
               l.number, "equality.table");
        }
        values.push_back(*v);
      }
    }
    return LRelation(lattice, algebra, values);
  }

  std::map<std::string, Section> sections_;
};

std::string join(std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i];
  }
  return out;
}

}  // namespace

Bundle parse_bundle(std::string_view text) { return Reader(text).read(); }

std::string serialize_bundle(const Bundle& bundle) {
  const auto& L = bundle.lattice();
  const auto& A = bundle.algebra();
  const std::size_t n = A.size();
  std::ostringstream out;
  out << kBundleMagic << ' ' << kBundleVersion << '\n';

  if (bundle.meta.name || bundle.meta.description) {
    out << "\n[meta]\n";
    if (bundle.meta.name) out << "name = " << *bundle.meta.name << '\n';
    if (bundle.meta.description) {
      out << "description = " << *bundle.meta.description << '\n';
    }
  }

  out << "\n[lattice.elements]\n" << join(L.names()) << '\n';
  out << "\n[lattice.covers]\n";
  for (auto [lo, hi] : L.covers()) {
    out << L.names()[lo] << ' ' << L.names()[hi] << '\n';
  }

  out << "\n[algebra.carrier]\n" << join(A.carrier()) << '\n';
  out << "\n[algebra.ops]\n";
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const auto& o = A.signature()[op];
    out << "op " << o.name << ' ' << o.arity << '\n';
    const auto table = A.table(op);
    const std::size_t cols = o.arity == 0 ? 1 : n;
    for (std::size_t k = 0; k < table.size(); ++k) {
      out << A.name(table[k]) << ((k + 1) % cols == 0 ? '\n' : ' ');
    }
  }

  out << "\n[equality.table]\n";
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      out << L.names()[bundle.equality.index_at(x, y)]
          << (y + 1 == n ? '\n' : ' ');
    }
  }
  return out.str();
}

Bundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(ErrorKind::SyntaxError, "cannot read '" + path + "'", 0, "");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bundle(buf.str());
}

}  // namespace lqg
