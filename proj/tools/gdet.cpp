// Command-line front end: evaluation, symbolic expansion, stabilizer checks
// and the lemma lab.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gdet/gdet.hpp"
#include "gdet/json_io.hpp"

namespace {

using gdet::DenseMatrix;
using gdet::Error;
using gdet::ErrorCode;
using gdet::Field;
using gdet::GenDetParams;
using gdet::Scalar;
using gdet::json::Json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Bad flags, unreadable files or malformed input; exits with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs f, converting any library error into a usage error.
template <class F>
auto as_input(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

struct Config {
  bool json = false;
  std::optional<std::uint64_t> p;
  std::string field;
  std::optional<std::string> alpha, beta;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::string matrix_path, transform_path, spec_path;
  std::string mode;
  std::size_t trials = 20;
  std::size_t r = 2;
  std::optional<std::uint64_t> samples;
  int eps_u = -1, eps_v = 1;
  bool det = false, perm = false, even = false, odd = false;
};

std::optional<Field> field_from_flags(const Config& c) {
  std::optional<Field> f;
  if (!c.field.empty()) {
    std::string text = c.field;
    if (text == "Q") {
      f = Field::rationals();
    } else {
      if (text.rfind("GF(", 0) == 0 && text.back() == ')') text = text.substr(3, text.size() - 4);
      std::uint64_t p = 0;
      std::istringstream is(text);
      if (!(is >> p) || !is.eof()) throw UsageError("--field must be Q, a prime, or GF(p)");
      f = as_input("--field", [&] { return Field::prime(p); });
    }
  }
  if (c.p) {
    const Field g = as_input("--p", [&] { return Field::prime(*c.p); });
    if (f && !(*f == g)) throw UsageError("--p and --field disagree");
    f = g;
  }
  return f;
}

Field chosen_field(const Config& c) { return field_from_flags(c).value_or(Field::rationals()); }

/// The field named on the command line must match the one stored in a file.
void check_file_field(const Config& c, Field file_field, const std::string& what) {
  if (auto f = field_from_flags(c); f && !(*f == file_field)) {
    throw UsageError(what + " is over " + file_field.to_string() + " but the flags select " + f->to_string());
  }
}

GenDetParams params_from_flags(const Config& c, Field f) {
  if (!c.alpha || !c.beta) throw UsageError("--alpha and --beta are required");
  return as_input("--alpha/--beta",
                  [&] { return GenDetParams{Scalar::parse(f, *c.alpha), Scalar::parse(f, *c.beta)}; });
}

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return as_input(path, [&] { return Json::parse(text); });
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// A matrix file holds either the full schema or a bare array of rows whose
/// entries are read in the field chosen by the flags.
DenseMatrix load_matrix(const Config& c) {
  if (c.matrix_path.empty()) throw UsageError("--matrix is required");
  const Json j = read_json(c.matrix_path);
  if (j.is_array()) {
    const Field f = chosen_field(c);
    return as_input(c.matrix_path, [&] {
      const std::size_t rows = j.size();
      const std::size_t cols = rows ? j.front().size() : 0;
      std::vector<Scalar> flat;
      for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw Error(ErrorCode::ParseError, "ragged rows");
        for (const auto& e : row) {
          if (e.is_number_integer()) {
            flat.emplace_back(f, e.get<long long>());
          } else if (e.is_string()) {
            flat.push_back(Scalar::parse(f, e.get<std::string>()));
          } else {
            throw Error(ErrorCode::ParseError, "entries must be integers or exact strings");
          }
        }
      }
      return DenseMatrix(f, rows, cols, std::move(flat));
    });
  }
  DenseMatrix m = as_input(c.matrix_path, [&] { return gdet::json::matrix_from_json(j); });
  check_file_field(c, m.field(), c.matrix_path);
  return m;
}

gdet::LinearOperator load_operator(const Config& c) {
  if (c.transform_path.empty()) throw UsageError("--transform is required");
  const Json j = read_json(c.transform_path);
  auto t = as_input(c.transform_path, [&] { return gdet::json::operator_from_json(j); });
  check_file_field(c, t.field(), c.transform_path);
  return t;
}

gdet::ExpansionOptions expansion_from_env() {
  gdet::ExpansionOptions opts;
  if (const char* cap = std::getenv("GDET_TERM_CAP")) {
    std::istringstream is(cap);
    std::size_t v = 0;
    if (!(is >> v) || !is.eof() || v == 0) throw UsageError("GDET_TERM_CAP must be a positive integer");
    opts.term_cap = v;
  }
  return opts;
}

gdet::EquationMode equation_mode(const std::string& mode) {
  if (mode == "even") return gdet::EquationMode::Even;
  if (mode == "odd") return gdet::EquationMode::Odd;
  if (mode == "full") return gdet::EquationMode::Full;
  throw UsageError("--mode must be even, odd or full");
}

struct Output {
  std::string text;
  int status = 0;
};

Output cmd_eval(const Config& c) {
  const DenseMatrix a = load_matrix(c);
  const Field f = a.field();
  const int flags = c.det + c.perm + c.even + c.odd;
  if (flags > 1) throw UsageError("--det, --perm, --even and --odd are exclusive");
  if (flags == 1 && (c.alpha || c.beta)) throw UsageError("a specialization flag replaces --alpha/--beta");
  GenDetParams params = c.det    ? GenDetParams::determinant(f)
                        : c.perm ? GenDetParams::permanent(f)
                        : c.even ? GenDetParams::even(f)
                        : c.odd  ? GenDetParams::odd(f)
                                 : params_from_flags(c, f);
  const Scalar v = gdet::gen_det(params, a);
  if (!c.json) return {v.to_string() + "\n"};
  return {dump(Json{{"field", gdet::json::field_to_json(f)},
                    {"alpha", params.alpha.to_string()},
                    {"beta", params.beta.to_string()},
                    {"value", gdet::json::scalar_to_json(v)}})};
}

Output cmd_poly(const Config& c) {
  const Field f = chosen_field(c);
  const GenDetParams params = params_from_flags(c, f);
  if (c.n == 0) throw UsageError("--n is required");
  const auto poly = gdet::build_gen_det_poly(c.n, params, 6);
  if (!c.json) return {gdet::to_string(poly) + "\n"};
  return {dump(Json{{"n", c.n},
                    {"field", gdet::json::field_to_json(f)},
                    {"alpha", params.alpha.to_string()},
                    {"beta", params.beta.to_string()},
                    {"terms", poly.size()},
                    {"poly", gdet::to_string(poly)}})};
}

Output cmd_minors(const Config& c) {
  const DenseMatrix a = load_matrix(c);
  const GenDetParams params = params_from_flags(c, a.field());
  const DenseMatrix m = gdet::gen_minor_matrix(params, a, c.r);
  if (c.json) return {dump(gdet::json::matrix_to_json(m))};
  std::ostringstream os;
  os << m << "\n";
  return {os.str()};
}

std::string verdict_text(const gdet::MembershipVerdict& v) {
  std::string s = v.member ? "member" : "non-member";
  if (v.randomized) {
    s += " (randomized, " + std::to_string(v.randomized->trials) + " trials, error bound " + v.randomized->error_bound + ")";
  } else {
    s += " (symbolic)";
  }
  return s + "\n";
}

Output cmd_stab_check(const Config& c) {
  const auto t = load_operator(c);
  const GenDetParams params = params_from_flags(c, t.field());
  gdet::MembershipVerdict v;
  const std::string mode = c.mode.empty() ? "symbolic" : c.mode;
  if (mode == "symbolic") {
    gdet::MembershipOptions opts;
    opts.expansion = expansion_from_env();
    v = gdet::membership_symbolic(t, params, opts);
  } else if (mode == "random") {
    v = gdet::membership_randomized(t, params, c.trials, c.seed);
  } else {
    throw UsageError("--mode must be symbolic or random");
  }
  std::optional<gdet::ExtractionResult> canonical;
  if (params.degenerate() == gdet::Degeneracy::Neither && t.n() >= 3) canonical = gdet::analyze_operator(t, params);
  if (c.json) return {dump(gdet::json::verdict_to_json(v, canonical))};
  std::string text = verdict_text(v);
  if (v.witness) {
    std::ostringstream os;
    os << "witness:\n" << *v.witness << "\n";
    text += os.str();
  }
  return {text};
}

Output cmd_stab_extract(const Config& c) {
  const auto t = load_operator(c);
  const GenDetParams params = params_from_flags(c, t.field());
  const auto result = gdet::analyze_operator(t, params);
  const Json j = gdet::json::extraction_to_json(result);
  return {dump(j), std::holds_alternative<gdet::Violation>(result) ? kExitFail : 0};
}

Output cmd_stab_sample(const Config& c) {
  if (c.n == 0) throw UsageError("--n is required");
  const auto [t, e] = gdet::sample_member(c.n, chosen_field(c), c.seed);
  const std::string op_text = dump(gdet::json::operator_to_json(t));
  const std::string spec_text = dump(gdet::json::spec_to_json(e.spec()));
  if (c.transform_path.empty() && c.spec_path.empty()) {
    return {dump(Json{{"operator", gdet::json::operator_to_json(t)}, {"spec", gdet::json::spec_to_json(e.spec())}})};
  }
  if (!c.transform_path.empty()) write_file(c.transform_path, op_text);
  if (!c.spec_path.empty()) write_file(c.spec_path, spec_text);
  return {c.json ? dump(Json{{"operator", c.transform_path}, {"spec", c.spec_path}}) : std::string()};
}

std::string report_text(const gdet::LabReport& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS " : "FAIL ") << r.lemma << ": checked " << r.checked << ", hypothesis hits "
     << r.hypothesis_hits << ", violations " << r.violations.size() << " (" << r.ms << " ms)\n";
  os << "  space: " << r.space << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  for (const auto& v : r.violations) os << "  violation: " << v << "\n";
  return os.str();
}

Output lab_output(const Config& c, const std::vector<gdet::LabReport>& reports) {
  Output out;
  Json arr = Json::array();
  for (const auto& r : reports) {
    if (!r.passed()) out.status = kExitFail;
    arr.push_back(gdet::json::report_to_json(r));
    if (!c.json) out.text += report_text(r);
  }
  if (c.json) out.text = dump(arr);
  return out;
}

Output cmd_lab_rank1(const Config& c) {
  const std::uint64_t p = c.p.value_or(3);
  const std::size_t n = c.n ? c.n : 3;
  gdet::Rank1LemmaOptions opts;
  opts.seed = c.seed;
  if (c.samples) {
    opts.exhaustive = false;
    opts.samples = *c.samples;
  }
  as_input("--p", [&] { return Field::prime(p); });
  return lab_output(c, {gdet::verify_rank1_lemma(p, n, opts)});
}

Output cmd_lab_n4_signs(const Config& c) {
  const Field f = chosen_field(c);
  std::vector<gdet::LabReport> reports;
  std::vector<gdet::EquationMode> modes;
  if (c.mode.empty()) {
    modes = {gdet::EquationMode::Even, gdet::EquationMode::Odd, gdet::EquationMode::Full};
  } else {
    modes = {equation_mode(c.mode)};
  }
  for (auto mode : modes) reports.push_back(gdet::enumerate_n4_sign_solutions(mode, f).report);
  return lab_output(c, reports);
}

Output cmd_lab_n4_exotic(const Config& c) {
  const Field f = chosen_field(c);
  const auto mode = c.mode.empty() ? gdet::EquationMode::Even : equation_mode(c.mode);
  const auto fam = gdet::N4SignFamily::ones(f, c.eps_u, c.eps_v, mode);
  as_input("family", [&] {
    fam.validate();
    return 0;
  });
  return lab_output(c, {gdet::n4_exotic_stabilizer_demo(fam)});
}

Output cmd_lab_derivative(const Config& c) {
  const Field f = chosen_field(c);
  const GenDetParams params = params_from_flags(c, f);
  if (c.n != 4 && c.n != 5) throw UsageError("--n must be 4 or 5");
  return lab_output(c, {gdet::verify_derivative_identity(c.n, params)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized determinants: evaluation, symbolic expansion, stabilizers and lemma checks"};
  app.fallthrough();
  app.require_subcommand(1);

  Config c;
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--p", c.p, "Work over GF(p), p an odd prime below 2^32");
  app.add_option("--field", c.field, "Q, p or GF(p); default Q");
  app.add_option("--alpha", c.alpha, "alpha, an exact field element such as 3 or -2/5");
  app.add_option("--beta", c.beta, "beta, an exact field element");
  app.add_option("--seed", c.seed, "Random seed (default 1)");

  auto* eval = app.add_subcommand("eval", "Evaluate alpha*even + beta*odd determinant of a matrix");
  eval->add_option("--matrix", c.matrix_path, "Matrix JSON file, or - for stdin")->required();
  eval->add_flag("--det", c.det, "Ordinary determinant");
  eval->add_flag("--perm", c.perm, "Permanent");
  eval->add_flag("--even", c.even, "Even part (alpha=1, beta=0)");
  eval->add_flag("--odd", c.odd, "Odd part (alpha=0, beta=1)");

  auto* poly = app.add_subcommand("poly", "Print the generalized determinant polynomial for n <= 6");
  poly->add_option("--n", c.n, "Matrix size")->required();

  auto* minors = app.add_subcommand("minors", "Matrix of generalized r x r minors");
  minors->add_option("--matrix", c.matrix_path, "Matrix JSON file")->required();
  minors->add_option("--r", c.r, "Minor size (default 2)");

  auto* stab = app.add_subcommand("stab", "Stabilizer membership, canonical extraction and sampling");
  stab->require_subcommand(1);
  auto* check = stab->add_subcommand("check", "Decide whether an operator fixes the polynomial");
  check->add_option("--transform", c.transform_path, "Operator JSON file")->required();
  check->add_option("--mode", c.mode, "symbolic (default) or random");
  check->add_option("--trials", c.trials, "Evaluation points for --mode random (default 20)");
  auto* extract = stab->add_subcommand("extract", "Recover the canonical monomial form of an operator");
  extract->add_option("--transform", c.transform_path, "Operator JSON file")->required();
  auto* sample = stab->add_subcommand("sample", "Draw a random stabilizer element");
  sample->add_option("--n", c.n, "Matrix size")->required();
  sample->add_option("--transform", c.transform_path, "Write the operator here");
  sample->add_option("--spec", c.spec_path, "Write the monomial spec here");

  auto* lab = app.add_subcommand("lab", "Machine checks of the supporting lemmas");
  lab->require_subcommand(1);
  auto* rank1 = lab->add_subcommand("rank1", "Vanishing 2x2 even/odd minors force a row or column matrix");
  rank1->add_option("--n", c.n, "Matrix size (default 3)");
  rank1->add_option("--samples", c.samples, "Sample this many matrices instead of enumerating");
  auto* signs = lab->add_subcommand("n4-signs", "Enumerate +-1 solutions of the 4x4 product equations");
  signs->add_option("--mode", c.mode, "even, odd or full (default: all three)");
  auto* exotic = lab->add_subcommand("n4-exotic", "Hadamard sign twist at n = 4 and its stabilizer verdicts");
  exotic->add_option("--eps-u", c.eps_u, "+1 or -1 (default -1)");
  exotic->add_option("--eps-v", c.eps_v, "+1 or -1 (default 1)");
  exotic->add_option("--mode", c.mode, "even (default) or odd");
  auto* deriv = lab->add_subcommand("derivative", "Second-order minors as iterated partial derivatives");
  deriv->add_option("--n", c.n, "4 or 5")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    Output out;
    if (eval->parsed()) {
      out = cmd_eval(c);
    } else if (poly->parsed()) {
      out = cmd_poly(c);
    } else if (minors->parsed()) {
      out = cmd_minors(c);
    } else if (check->parsed()) {
      out = cmd_stab_check(c);
    } else if (extract->parsed()) {
      out = cmd_stab_extract(c);
    } else if (sample->parsed()) {
      out = cmd_stab_sample(c);
    } else if (rank1->parsed()) {
      out = cmd_lab_rank1(c);
    } else if (signs->parsed()) {
      out = cmd_lab_n4_signs(c);
    } else if (exotic->parsed()) {
      out = cmd_lab_n4_exotic(c);
    } else if (deriv->parsed()) {
      out = cmd_lab_derivative(c);
    }
    std::cout << out.text;
    return out.status;
  } catch (const UsageError& e) {
    std::cerr << "gdet: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "gdet: " << e.what() << "\n";
    return kExitFail;
  }
}
