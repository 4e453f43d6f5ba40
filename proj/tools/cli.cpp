#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lqg/bundle.hpp"
#include "lqg/generate.hpp"
#include "lqg/solver.hpp"
#include "lqg/synthesis.hpp"
#include "lqg/term_syntax.hpp"

namespace lqg::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  bool quiet = false;
};

struct Report {
  std::string command;
  std::string verdict = "ok";  // ok | fail | error
  Json payload = Json::object();
};

// ------------------------------------------------------------------ helpers

Json names_of(const FiniteAlgebra& A, const ElementSet& set) {
  Json out = Json::array();
  for (Elem x : set) out.push_back(A.name(x));
  return out;
}

std::string braces(const Json& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i].get<std::string>();
  }
  return out + "}";
}

std::string tuple(const Json& names) {
  std::string s = braces(names);
  s.front() = '(';
  s.back() = ')';
  return s;
}

Elem carrier_element(const FiniteAlgebra& A, const std::string& name) {
  auto x = A.find(name);
  if (!x) throw Error(ErrorKind::UnknownName, "unknown carrier element '" + name + "'");
  return *x;
}

LatticeElt lattice_element(const FiniteLattice& L, const std::string& name) {
  auto p = L.find(name);
  if (!p) throw Error(ErrorKind::UnknownName, "unknown lattice element '" + name + "'");
  return *p;
}

Json identity_witness(const LEquality& E, const FuzzyIdentityResult& r) {
  Json w = Json::object();
  if (r.holds) return w;
  Json assignment = Json::object();
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    assignment["x" + std::to_string(i + 1)] = E.algebra().name(r.witness[i]);
  }
  w["assignment"] = assignment;
  w["bound"] = E.lattice().name(*r.bound);
  w["value"] = E.lattice().name(*r.value);
  return w;
}

Json law_report(const LEquality& E, const LawReport& r) {
  Json out;
  out["holds"] = r.holds;
  if (!r.holds) {
    out["failed_law"] = r.failed_law;
    if (!r.witness.holds) out["witness"] = identity_witness(E, r.witness);
    if (r.failing_cut) out["failing_cut"] = E.lattice().name(*r.failing_cut);
  }
  return out;
}

Json quotient_json(const QuotientAlgebra& q) {
  const auto& A = q.algebra();
  Json ops = Json::array();
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    Json table = Json::array();
    const auto t = A.table(op);
    const std::size_t cols = A.arity(op) == 2 ? A.size() : t.size();
    for (std::size_t r = 0; cols && r < t.size() / cols; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < cols; ++c) row.push_back(A.name(t[r * cols + c]));
      table.push_back(row);
    }
    ops.push_back({{"name", A.signature()[op].name},
                   {"arity", A.arity(op)},
                   {"table", table}});
  }
  return {{"carrier", A.carrier()}, {"ops", ops}};
}

// ----------------------------------------------------------------- commands

Report cmd_validate(const Bundle& bundle) {
  Report report{"validate"};
  const auto result = validate_lequality(bundle.equality);
  const auto& A = bundle.algebra();
  Json violations = Json::array();
  for (const auto& v : result.report.violations) {
    Json item{{"kind", to_string(v.kind)}};
    if (!v.operation.empty()) item["operation"] = v.operation;
    item["witness"] = names_of(A, {});
    for (Elem x : v.witness) item["witness"].push_back(A.name(x));
    item["count"] = v.count;
    violations.push_back(item);
  }
  report.payload["valid"] = result.report.ok();
  report.payload["violations"] = violations;
  if (result.equality) {
    Json mu = Json::object();
    for (Elem x = 0; x < A.size(); ++x) {
      mu[A.name(x)] = bundle.lattice().name(result.equality->mu(x));
    }
    report.payload["mu"] = mu;
  }
  report.verdict = result.report.ok() ? "ok" : "fail";
  return report;
}

Report cmd_cuts(const LEquality& E, const std::optional<std::string>& at) {
  Report report{"cuts"};
  const auto& L = E.lattice();
  const auto& A = E.algebra();
  std::vector<LatticeElt> levels =
      at ? std::vector<LatticeElt>{lattice_element(L, *at)} : L.elements();
  const auto mul = A.signature().first_of_arity(2);
  Json cuts = Json::array();
  for (LatticeElt p : levels) {
    const auto pair = cut_pair(E, p);
    const auto q = cut_quotient(E, p);
    Json blocks = Json::array();
    for (const auto& b : pair.e_p.blocks()) blocks.push_back(names_of(A, b));
    Json item{{"p", L.name(p)},
              {"mu_p", names_of(A, pair.mu_p)},
              {"blocks", blocks},
              {"quotient", quotient_json(q)}};
    if (mul) item["quasigroup"] = is_quasigroup(q.algebra(), *mul);
    cuts.push_back(item);
  }
  report.payload["cuts"] = cuts;
  return report;
}

Report cmd_classify(const LEquality& E) {
  Report report{"classify"};
  const auto& A = E.algebra();
  const auto& L = E.lattice();
  const auto mul = A.signature().first_of_arity(2);
  Json& out = report.payload;
  out["l_groupoid"] = mul.has_value();
  if (!mul) {
    for (auto key : {"l_quasigroup", "l_semigroup", "l_loop", "l_group"}) {
      out[key] = {{"applicable", false}};
    }
    return report;
  }
  const auto g = LGroupoid::reduct_of(E, A.signature()[*mul].name);
  const auto cert = is_l_quasigroup(g);
  Json q{{"applicable", true}, {"holds", cert.holds}};
  if (cert.failing_equation) {
    const auto& eq = *cert.failing_equation;
    q["failing_equation"] = {{"side", to_string(eq.side)},
                             {"a", A.name(eq.a)},
                             {"b", A.name(eq.b)}};
  }
  if (cert.failing_cut) q["failing_cut"] = L.name(*cert.failing_cut);
  out["l_quasigroup"] = q;

  try {
    const auto ops = find_division_ops(A);
    const auto r = check_equasigroup(E, ops);
    Json e{{"applicable", true}, {"holds", r.holds}};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!r.identities[i].holds) {
        e["failed_law"] = "QE" + std::to_string(i + 1);
        e["witness"] = identity_witness(E, r.identities[i]);
        break;
      }
    }
    out["l_equasigroup"] = e;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotApplicable) throw;
  }

  Json semi = law_report(E, is_l_semigroup(E, *mul));
  semi["applicable"] = true;
  out["l_semigroup"] = semi;

  auto optional_law = [&](const char* key, auto&& check) {
    try {
      Json r = law_report(E, check());
      r["applicable"] = true;
      out[key] = r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotApplicable) throw;
      out[key] = {{"applicable", false}, {"reason", e.what()}};
    }
  };
  optional_law("l_loop", [&] { return is_l_loop(E); });
  optional_law("l_group", [&] { return is_l_group(E); });
  return report;
}

Report cmd_solve(const LEquality& E, Side side, const std::string& a_name,
                 const std::string& b_name) {
  Report report{"solve"};
  const auto& A = E.algebra();
  const auto& L = E.lattice();
  const Elem a = carrier_element(A, a_name);
  const Elem b = carrier_element(A, b_name);
  const auto g = LGroupoid::reduct_of(E);
  Json& out = report.payload;
  out["equation"] = {{"side", to_string(side)},
                     {"operation", g.algebra().signature()[0].name},
                     {"a", a_name},
                     {"b", b_name}};
  try {
    const auto s = solve(g, side, a, b);
    const Elem c = s.canonical_rep;
    const Elem product = g.product(side, a, c);
    const LatticeElt e_value = E.at(product, b);
    out["grade"] = L.name(s.grade);
    out["class"] = names_of(A, s.solution_class);
    out["representative"] = A.name(c);
    out["check"] = {{"product", A.name(product)},
                    {"mu_rep", L.name(E.mu(c))},
                    {"e_value", L.name(e_value)},
                    {"rhs", L.name(L.meet(E.mu(c), e_value))}};
  } catch (const SolveError& e) {
    report.verdict = "fail";
    out["grade"] = L.name(e.outcome().grade);
    out["error"] = to_string(e.kind());
    Json classes = Json::array();
    for (const auto& cls : e.outcome().solving_classes) classes.push_back(names_of(A, cls));
    out["classes"] = classes;
  }
  return report;
}

Report cmd_synthesize(const Bundle& bundle, const LEquality& E, bool inverse) {
  Report report{"synthesize"};
  const auto& A = E.algebra();
  std::shared_ptr<const FiniteAlgebra> extended;
  Json added = Json::array();
  try {
    for (auto name : inverse ? std::vector<std::string_view>{kInverse}
                             : std::vector<std::string_view>{kLeftDivision, kRightDivision}) {
      if (A.signature().find(std::string(name))) {
        throw Error(ErrorKind::NotApplicable,
                    "operation '" + std::string(name) + "' is already present");
      }
    }
    if (inverse) {
      const auto table = synthesize_inverse(E, find_loop_ops(A));
      extended = std::make_shared<const FiniteAlgebra>(
          A.with_operation({std::string(kInverse), 1}, table));
      added.push_back(kInverse);
    } else {
      const auto q = synthesize_divisions(LGroupoid::reduct_of(E));
      const auto& S = q.equality.algebra();
      auto t = [&](std::size_t op) {
        return std::vector<Elem>(S.table(op).begin(), S.table(op).end());
      };
      extended = std::make_shared<const FiniteAlgebra>(
          A.with_operation({std::string(kLeftDivision), 2}, t(q.ops.left_div))
              .with_operation({std::string(kRightDivision), 2}, t(q.ops.right_div)));
      added.push_back(kLeftDivision);
      added.push_back(kRightDivision);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAnLQuasigroup &&
        e.kind() != ErrorKind::PreconditionFailed &&
        e.kind() != ErrorKind::NotApplicable) {
      throw;
    }
    report.verdict = "fail";
    report.payload["error"] = to_string(e.kind());
    report.payload["message"] = e.what();
    return report;
  }
  const auto equality = require_lequality(E.relation().with_algebra(extended));
  report.payload["added"] = added;
  report.payload["bundle"] =
      serialize_bundle(Bundle{bundle.meta, equality.relation()});
  return report;
}

Report cmd_check_identity(const LEquality& E, const std::string& lhs,
                          const std::string& rhs) {
  Report report{"check-identity"};
  const Term u = parse_term(lhs);
  const Term v = parse_term(rhs);
  const auto direct = check_fuzzy_identity(E, u, v);
  const auto cuts = check_identity_via_cuts(E, u, v);
  if (direct.holds != cuts.holds) {
    throw Error(ErrorKind::InternalDisagreement,
                "identity route and cut route disagree");
  }
  Json& out = report.payload;
  out["lhs"] = u.to_string();
  out["rhs"] = v.to_string();
  out["holds"] = direct.holds;
  if (!direct.holds) {
    out["witness"] = identity_witness(E, direct);
    out["failing_cut"] = E.lattice().name(*cuts.failing_cut);
  }
  report.verdict = direct.holds ? "ok" : "fail";
  return report;
}

struct RandomCheckArgs {
  std::size_t count = 200;
  std::size_t max_lattice = 8;
  std::size_t max_carrier = 5;
};

Report cmd_random_check(const Options& opts, const RandomCheckArgs& args) {
  Report report{"random-check"};
  gen::Rng rng(opts.seed);
  std::size_t quasigroups = 0;
  std::size_t identities_checked = 0;
  for (std::size_t i = 0; i < args.count; ++i) {
    const auto L = gen::random_lattice(rng, args.max_lattice);
    const auto g = gen::random_lgroupoid(rng, L, args.max_carrier);
    // Throws InternalDisagreement if the routes differ.
    if (is_l_quasigroup(g).holds) ++quasigroups;
    const auto u = gen::random_term(rng, g.algebra().signature(), 3, 3);
    const auto v = gen::random_term(rng, g.algebra().signature(), 3, 3);
    if (check_fuzzy_identity(g.equality(), u, v).holds !=
        check_identity_via_cuts(g.equality(), u, v).holds) {
      throw Error(ErrorKind::InternalDisagreement,
                  "identity routes disagree on " + u.to_string() + " = " +
                      v.to_string());
    }
    ++identities_checked;
  }
  report.payload = {{"seed", opts.seed},
                    {"instances", args.count},
                    {"l_quasigroups", quasigroups},
                    {"identities", identities_checked},
                    {"disagreements", 0}};
  return report;
}

// ---------------------------------------------------------------- rendering

std::string yes_no(const Json& j) {
  if (!j.value("applicable", true)) return "n/a";
  return j["holds"].get<bool>() ? "yes" : "no";
}

std::string render_witness(const Json& w) {
  std::string s = "(";
  bool first = true;
  for (const auto& [k, v] : w["assignment"].items()) {
    if (!first) s += ",";
    first = false;
    s += k + "=" + v.get<std::string>();
  }
  return s + "): bound " + w["bound"].get<std::string>() + ", value " +
         w["value"].get<std::string>();
}

void render_text(const Report& r, std::ostream& out) {
  const Json& p = r.payload;
  if (r.command == "validate") {
    out << "equality: " << (p["valid"].get<bool>() ? "valid" : "invalid") << '\n';
    for (const auto& v : p["violations"]) {
      out << "  " << v["kind"].get<std::string>();
      if (v.contains("operation")) out << " [" << v["operation"].get<std::string>() << "]";
      out << ": witness " << tuple(v["witness"]) << ", " << v["count"].get<std::size_t>()
          << " violating tuple(s)\n";
    }
    if (p.contains("mu")) {
      out << "mu:";
      for (const auto& [k, v] : p["mu"].items()) out << ' ' << k << '=' << v.get<std::string>();
      out << '\n';
    }
  } else if (r.command == "cuts") {
    for (const auto& c : p["cuts"]) {
      out << "p = " << c["p"].get<std::string>() << '\n';
      out << "  mu_p: " << braces(c["mu_p"]) << '\n';
      std::string blocks = "{";
      for (std::size_t i = 0; i < c["blocks"].size(); ++i) {
        blocks += (i ? "," : "") + braces(c["blocks"][i]);
      }
      out << "  E_p:  " << blocks << "}\n";
      for (const auto& op : c["quotient"]["ops"]) {
        out << "  " << op["name"].get<std::string>() << ":";
        if (op["arity"].get<int>() == 2) out << '\n';
        for (const auto& row : op["table"]) {
          out << (op["arity"].get<int>() == 2 ? "    " : " ");
          for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? " " : "") << row[i].get<std::string>();
          }
          out << '\n';
        }
      }
      if (c.contains("quasigroup")) {
        out << "  quasigroup: " << (c["quasigroup"].get<bool>() ? "yes" : "no") << '\n';
      }
    }
  } else if (r.command == "classify") {
    out << "L-groupoid:    " << (p["l_groupoid"].get<bool>() ? "yes" : "no") << '\n';
    const std::pair<const char*, const char*> rows[] = {
        {"l_quasigroup", "L-quasigroup:  "}, {"l_equasigroup", "L-equasigroup: "},
        {"l_semigroup", "L-semigroup:   "},  {"l_loop", "L-loop:        "},
        {"l_group", "L-group:       "}};
    for (auto [key, label] : rows) {
      if (!p.contains(key)) continue;
      const Json& j = p[key];
      out << label << yes_no(j);
      if (j.contains("failing_equation")) {
        const auto& e = j["failing_equation"];
        out << " (" << e["side"].get<std::string>() << " equation a=" << e["a"].get<std::string>()
            << ", b=" << e["b"].get<std::string>() << "; cut "
            << j["failing_cut"].get<std::string>() << ")";
      } else if (j.contains("failed_law")) {
        out << " (" << j["failed_law"].get<std::string>();
        if (j.contains("witness")) out << " at " << render_witness(j["witness"]);
        out << ")";
      }
      out << '\n';
    }
  } else if (r.command == "solve") {
    const auto& e = p["equation"];
    const std::string op = e["operation"].get<std::string>();
    const std::string a = e["a"].get<std::string>();
    const std::string b = e["b"].get<std::string>();
    out << "equation: "
        << (e["side"] == "left" ? a + " " + op + " x = " + b : "y " + op + " " + a + " = " + b)
        << '\n';
    out << "grade: " << p["grade"].get<std::string>() << '\n';
    if (p.contains("error")) {
      out << "result: " << p["error"].get<std::string>() << '\n';
      for (const auto& c : p["classes"]) out << "  solving class " << braces(c) << '\n';
    } else {
      const auto& c = p["check"];
      const std::string rep = p["representative"].get<std::string>();
      out << "class: " << braces(p["class"]) << '\n';
      out << "representative: " << rep << '\n';
      const std::string prod = e["side"] == "left" ? a + op + rep : rep + op + a;
      out << "check: mu(" << rep << ") = " << c["mu_rep"].get<std::string>() << ", E(" << prod
          << "," << b << ") = E(" << c["product"].get<std::string>() << "," << b << ") = "
          << c["e_value"].get<std::string>() << ", " << c["mu_rep"].get<std::string>()
          << " & " << c["e_value"].get<std::string>() << " = " << c["rhs"].get<std::string>() << '\n';
    }
  } else if (r.command == "synthesize") {
    if (p.contains("bundle")) {
      out << p["bundle"].get<std::string>();
    } else {
      out << "synthesis failed: " << p["error"].get<std::string>() << ": "
          << p["message"].get<std::string>() << '\n';
    }
  } else if (r.command == "check-identity") {
    out << p["lhs"].get<std::string>() << " = " << p["rhs"].get<std::string>() << ": "
        << (p["holds"].get<bool>() ? "holds" : "fails") << '\n';
    if (p.contains("witness")) {
      out << "witness " << render_witness(p["witness"]) << '\n';
      out << "failing cut: " << p["failing_cut"].get<std::string>() << '\n';
    }
  } else if (r.command == "random-check") {
    out << "instances: " << p["instances"] << " (seed " << p["seed"] << ")\n"
        << "L-quasigroups: " << p["l_quasigroups"] << '\n'
        << "identity pairs: " << p["identities"] << '\n'
        << "disagreements: " << p["disagreements"] << '\n';
  }
}

void emit(const Report& r, const Options& opts, std::ostream& out) {
  if (opts.quiet) return;
  if (opts.format == "machine") {
    Json doc{{"schema_version", kSchemaVersion},
             {"command", r.command},
             {"verdict", r.verdict},
             {"payload", r.payload}};
    out << doc.dump(2) << '\n';
  } else {
    render_text(r, out);
  }
}

int emit_error(const std::string& command, const Error& e,
               std::optional<std::size_t> line, const std::string& section,
               const Options& opts, std::ostream& out, std::ostream& err) {
  err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
  if (opts.format == "machine" && !opts.quiet) {
    Json error{{"kind", to_string(e.kind())}, {"message", e.what()}};
    if (line && *line) error["line"] = *line;
    if (!section.empty()) error["section"] = section;
    Json doc{{"schema_version", kSchemaVersion},
             {"command", command},
             {"verdict", "error"},
             {"payload", {{"error", error}}}};
    out << doc.dump(2) << '\n';
  }
  return kExitInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Finite lattice-valued algebras: validation, cuts, solving, synthesis",
               "lqg"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--seed", opts.seed, "Seed for randomized commands");
  app.add_flag("--quiet", opts.quiet, "Suppress the report; keep the exit code");

  std::string path;
  auto bundle_arg = [&](CLI::App* sub) {
    sub->add_option("bundle", path, "Bundle file")->required();
    sub->fallthrough();
  };

  auto* validate = app.add_subcommand("validate", "Check the equality axioms");
  bundle_arg(validate);

  auto* cuts = app.add_subcommand("cuts", "Cut sets and cut quotients");
  bundle_arg(cuts);
  std::optional<std::string> at;
  cuts->add_option("--at", at, "Single lattice element");

  auto* classify = app.add_subcommand("classify", "Classify the structure");
  bundle_arg(classify);

  auto* solve_cmd = app.add_subcommand("solve", "Solve a*x=b or y*a=b up to E");
  bundle_arg(solve_cmd);
  std::string side_name, a_name, b_name;
  solve_cmd->add_option("--side", side_name)->required()->check(
      CLI::IsMember({"left", "right"}));
  solve_cmd->add_option("--a", a_name)->required();
  solve_cmd->add_option("--b", b_name)->required();

  auto* synth = app.add_subcommand("synthesize", "Add divisions or an inverse");
  bundle_arg(synth);
  bool want_divisions = false, want_inverse = false;
  auto* div_flag = synth->add_flag("--divisions", want_divisions, "Synthesize \\ and / (default)");
  synth->add_flag("--inverse", want_inverse, "Synthesize the inverse")->excludes(div_flag);

  auto* identity = app.add_subcommand("check-identity", "Check a fuzzy identity");
  bundle_arg(identity);
  std::string lhs, rhs;
  identity->add_option("--lhs", lhs)->required();
  identity->add_option("--rhs", rhs)->required();

  auto* random = app.add_subcommand("random-check",
                                    "Cross-check solver routes on random instances");
  random->fallthrough();
  RandomCheckArgs random_args;
  random->add_option("--count", random_args.count);
  random->add_option("--max-lattice", random_args.max_lattice)->check(CLI::Range(1, 64));
  random->add_option("--max-carrier", random_args.max_carrier)->check(CLI::Range(1, 12));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    Report report;
    if (sub == random) {
      report = cmd_random_check(opts, random_args);
    } else {
      const Bundle bundle = load_bundle(path);
      if (sub == validate) {
        report = cmd_validate(bundle);
      } else {
        const LEquality E = require_lequality(bundle.equality);
        if (sub == cuts) report = cmd_cuts(E, at);
        if (sub == classify) report = cmd_classify(E);
        if (sub == solve_cmd) {
          report = cmd_solve(E, side_name == "left" ? Side::Left : Side::Right,
                             a_name, b_name);
        }
        if (sub == synth) report = cmd_synthesize(bundle, E, want_inverse);
        if (sub == identity) report = cmd_check_identity(E, lhs, rhs);
      }
    }
    emit(report, opts, out);
    return report.verdict == "ok" ? kExitOk : kExitFail;
  } catch (const ParseError& e) {
    return emit_error(command, e, e.line(), e.section(), opts, out, err);
  } catch (const Error& e) {
    return emit_error(command, e, std::nullopt, "", opts, out, err);
  }
}

}  // namespace lqg::cli
