// qshape: command-line front end for the pure quartic shape library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qshape/counting.hpp"
#include "qshape/gram.hpp"
#include "qshape/io.hpp"
#include "qshape/reduction.hpp"

using namespace qshape;
using nlohmann::ordered_json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("write failed for '" + path + "'");
}

std::string triple(const NormalForm& nf) {
  return "(" + std::to_string(nf.a) + "," + std::to_string(nf.b) + "," + std::to_string(nf.c) + ")";
}

std::string rational(const Rational& r) { return QuadraticReal(r).to_string(); }

template <typename Derived>
std::vector<std::vector<std::string>> exact_rows(const Eigen::MatrixBase<Derived>& m) {
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.emplace_back();
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows.back().push_back(m(i, j).to_string());
  }
  return rows;
}

template <typename Derived>
std::vector<std::vector<std::string>> float_rows(const Eigen::MatrixBase<Derived>& m) {
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.emplace_back();
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows.back().push_back(format_double(static_cast<double>(m(i, j))));
  }
  return rows;
}

void text_matrix(std::ostringstream& os, const std::string& name, const std::vector<std::vector<std::string>>& rows) {
  os << name << ":\n";
  for (const auto& r : rows) {
    os << " ";
    for (const auto& v : r) os << ' ' << v;
    os << '\n';
  }
}

// Rect from "R1lo,R1hi,R2lo,R2hi".
Rect parse_rect(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("bad --rect component '" + part + "'");
    }
  }
  if (v.size() != 4) throw UsageError("--rect needs R1lo,R1hi,R2lo,R2hi");
  Rect r{v[0], v[1], v[2], v[3]};
  r.validate();
  return r;
}

std::set<FieldType> parse_types(const std::vector<std::string>& names) {
  std::set<FieldType> out;
  for (const auto& n : names) out.insert(parse_field_type(n));
  return out;
}

std::optional<std::set<Sign>> parse_signs(const std::string& s) {
  if (s == "+") return std::set<Sign>{Sign::Plus};
  if (s == "-") return std::set<Sign>{Sign::Minus};
  if (s == "both") return std::nullopt;
  throw UsageError("--sign must be +, - or both");
}

// classify

struct ClassifyOpts {
  std::int64_t m = 0;
  std::string format = "text";
};

int run_classify(const ClassifyOpts& o) {
  const PureQuarticField f = PureQuarticField::from_m(o.m);
  const ShapeParams p = shape_params(f.counting_form);
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json j{{"m", f.m},
                   {"counting_form", {f.counting_form.a, f.counting_form.b, f.counting_form.c}},
                   {"funakura_form", {f.funakura_form.a, f.funakura_form.b, f.funakura_form.c}},
                   {"funakura_m", f.funakura_m},
                   {"type", to_string(f.field_class.type)},
                   {"sign", std::string(1, sign_char(f.field_class.sign))},
                   {"disc", to_string(f.discriminant)},
                   {"lambda1_sq", rational(p.lambda1_sq)},
                   {"lambda2", rational(p.lambda2)}};
    os << j.dump(2) << '\n';
  } else {
    os << "m=" << f.m << '\n'
       << "counting_form=" << triple(f.counting_form) << '\n'
       << "funakura_form=" << triple(f.funakura_form) << '\n'
       << "funakura_m=" << f.funakura_m << '\n'
       << "type=" << to_string(f.field_class.type) << '\n'
       << "sign=" << sign_char(f.field_class.sign) << '\n'
       << "disc=" << to_string(f.discriminant) << '\n'
       << "lambda1_sq=" << rational(p.lambda1_sq) << '\n'
       << "lambda2=" << rational(p.lambda2) << '\n';
  }
  emit(os.str(), "");
  return 0;
}

// shape

struct ShapeOpts {
  std::int64_t m = 0;
  bool exact = false;
  bool floating = false;
  bool reduce = false;
  std::string format = "text";
};

int run_shape(const ShapeOpts& o) {
  const PureQuarticField f = PureQuarticField::from_m(o.m);
  const Gram4 g = gram(f);
  const Gram3 p = project_perp(g);
  const Eigen::Matrix3d pd = to_double(p);
  const bool exact = o.exact || !o.floating;
  const bool floating = o.floating || !o.exact;
  const IwasawaCoords iw = iwasawa(pd);
  const bool in_f3 = in_fundamental_domain(pd);
  std::optional<Reduction> red;
  if (o.reduce) red = minkowski_reduce(pd);

  std::ostringstream os;
  if (o.format == "json") {
    ordered_json j{{"m", f.m}, {"type", to_string(f.field_class.type)},
                   {"sign", std::string(1, sign_char(f.field_class.sign))}};
    if (exact) {
      j["gram_exact"] = exact_rows(g);
      j["projected_exact"] = exact_rows(p);
    }
    if (floating) {
      j["gram_float"] = float_rows(to_double(g));
      j["projected_float"] = float_rows(pd);
    }
    j["iwasawa"] = {{"x1", iw.x1}, {"x2", iw.x2}, {"x3", iw.x3}, {"y1", iw.y1}, {"y2", iw.y2}};
    j["in_F3"] = in_f3;
    if (red) {
      j["reduced"] = float_rows(red->reduced);
      ordered_json u = ordered_json::array();
      for (int i = 0; i < 3; ++i) u.push_back({red->unimodular(i, 0), red->unimodular(i, 1), red->unimodular(i, 2)});
      j["unimodular"] = u;
      j["reduced_in_F3"] = in_fundamental_domain(red->reduced);
    }
    os << j.dump(2) << '\n';
  } else {
    os << "m=" << f.m << " type=" << to_string(f.field_class.type) << sign_char(f.field_class.sign) << '\n';
    if (exact) {
      text_matrix(os, "gram_exact", exact_rows(g));
      text_matrix(os, "projected_exact", exact_rows(p));
    }
    if (floating) {
      text_matrix(os, "gram_float", float_rows(to_double(g)));
      text_matrix(os, "projected_float", float_rows(pd));
    }
    os << "iwasawa: x1=" << format_double(iw.x1) << " x2=" << format_double(iw.x2) << " x3=" << format_double(iw.x3)
       << " y1=" << format_double(iw.y1) << " y2=" << format_double(iw.y2) << '\n';
    os << "in_F3=" << (in_f3 ? "true" : "false") << '\n';
    if (red) {
      text_matrix(os, "reduced", float_rows(red->reduced));
      std::vector<std::vector<std::string>> u;
      for (int i = 0; i < 3; ++i) {
        u.emplace_back();
        for (int k = 0; k < 3; ++k) u.back().push_back(std::to_string(red->unimodular(i, k)));
      }
      text_matrix(os, "unimodular", u);
      os << "reduced_in_F3=" << (in_fundamental_domain(red->reduced) ? "true" : "false") << '\n';
    }
  }
  emit(os.str(), "");
  return 0;
}

// enumerate

struct EnumerateOpts {
  std::optional<double> max_disc;
  std::optional<double> max_n;
  std::vector<std::string> types;
  std::string sign = "both";
  std::string rect;
  std::optional<int> tau;
  std::string out;
  std::string format = "csv";
};

int run_enumerate(const EnumerateOpts& o, unsigned threads) {
  if (o.max_disc.has_value() == o.max_n.has_value()) throw UsageError("give exactly one of --max-disc, --max-N");
  EnumerationFilter filter;
  if (!o.types.empty()) filter.types = parse_types(o.types);
  filter.signs = parse_signs(o.sign);
  if (!o.rect.empty()) filter.rect = parse_rect(o.rect);
  if (o.tau) {
    if (*o.tau < 0 || *o.tau >= 32 || *o.tau % 8 == 0)
      throw QuarticError(ErrorCode::InvalidTau, "tau must be a residue mod 32 not divisible by 8");
    filter.tau = *o.tau;
  }
  const Enumeration e = o.max_n ? enumerate_fields(*o.max_n, filter, threads)
                                : enumerate_by_discriminant(*o.max_disc, filter, threads);
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& f : e.fields)
      rows.push_back({{"m", f.m}, {"a", f.a}, {"b", f.b}, {"c", f.c},
                      {"sign", std::string(1, sign_char(f.sign))}, {"type", to_string(f.type)},
                      {"disc", to_string(f.disc)}, {"lambda1_sq", rational(f.lambda1_sq)}, {"b_param", f.b}});
    ordered_json j{{"fields", rows},
                   {"total", e.fields.size()},
                   {"excluded_8divm", e.excluded_8divm},
                   {"excluded_reducible", e.excluded_reducible}};
    os << j.dump(2) << '\n';
  } else {
    write_fields_csv(os, e);
  }
  emit(os.str(), o.out);
  return 0;
}

// verify

struct VerifyOpts {
  std::string out;
  std::int64_t max_m = 2000;
  double N = 1e6, R1 = 4, R2 = 3;
  int tau = 3;
  double tolerance = 0.15;
  std::vector<std::uint64_t> primes{3, 5, 7, 11, 13};
  std::vector<double> lip_M{1e2, 1e3, 1e4, 1e5};
  std::vector<double> lip_R{1, 2, 5, 10};
};

std::vector<CheckResult> verify_gram(const VerifyOpts& o) {
  std::size_t n = 0, det_bad = 0, num_bad = 0, idx_bad = 0, torus_bad = 0, pd_bad = 0;
  std::int64_t first_bad = 0;
  double worst = 0;
  for (std::int64_t m = -o.max_m; m <= o.max_m; ++m) {
    if (!is_admissible(m)) continue;
    ++n;
    const PureQuarticField f = PureQuarticField::from_m(m);
    const Gram4 g = gram(f);
    const i128 ad = f.discriminant < 0 ? -f.discriminant : f.discriminant;
    bool bad = false;
    if (cofactor_determinant(g) != QuadraticReal(Rational(to_string(ad)))) ++det_bad, bad = true;
    if (!index_square_check(f)) ++idx_bad, bad = true;
    if (!torus_factorization_check(f)) ++torus_bad, bad = true;
    if (!is_positive_definite_exact(project_perp(g))) ++pd_bad, bad = true;
    const Eigen::Matrix4d gd = to_double(g), gn = gram_numeric(f);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double scale = std::max(std::abs(gd(i, j)), std::sqrt(gd(i, i) * gd(j, j)));
        const double rel = std::abs(gd(i, j) - gn(i, j)) / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-9) ++num_bad, bad = true;
      }
    if (bad && first_bad == 0) first_bad = m;
  }
  auto mk = [&](const std::string& name, std::size_t bad, const std::string& tol) {
    std::string obs = std::to_string(bad) + " failures of " + std::to_string(n);
    if (bad) obs += ", first m=" + std::to_string(first_bad);
    return CheckResult{name, bad == 0, obs, "0 failures", tol};
  };
  std::vector<CheckResult> out{mk("gram_determinant_equals_abs_disc", det_bad, "exact"),
                               mk("index_square", idx_bad, "exact"),
                               mk("torus_factorization", torus_bad, "exact"),
                               mk("projected_positive_definite", pd_bad, "exact"),
                               mk("gram_vs_embeddings", num_bad, "1e-9 relative")};
  out.back().observed += ", worst relative error " + format_double(worst);
  return out;
}

std::vector<CheckResult> verify_counting(const VerifyOpts& o, unsigned threads) {
  const CountReport r = count_C_tau(o.N, o.R1, o.R2, o.tau, threads);
  return {CheckResult{"C_tau_ratio(N=" + format_double(o.N) + ",R1=" + format_double(o.R1) +
                          ",R2=" + format_double(o.R2) + ",tau=" + std::to_string(o.tau) + ")",
                      r.relative_deviation() <= o.tolerance,
                      "empirical/N=" + format_double(r.ratio) + " (count " + std::to_string(r.empirical) + ")",
                      "predicted=" + format_double(r.predicted_ratio), format_double(o.tolerance) + " relative"}};
}

std::vector<CheckResult> verify_densities(const VerifyOpts& o) {
  std::vector<CheckResult> out;
  for (std::uint64_t l : o.primes) {
    if (l < 3 || !is_prime(l)) throw UsageError("--l takes odd primes, got " + std::to_string(l));
    if (l > 13) throw UsageError("brute force is limited to l <= 13");
    const std::uint64_t bf = brute_force_A(l);
    const std::uint64_t formula = (l - 1) * (l - 1) * (l - 1) * (l * l * l + 3 * l * l);
    const std::uint64_t total = l * l * l * l * l * l;
    Rational observed(static_cast<long>(bf), static_cast<unsigned long>(total));
    observed.canonicalize();
    out.push_back({"A_l(l=" + std::to_string(l) + ")", bf == formula && observed == carefree_density(l),
                   std::to_string(bf) + "/" + std::to_string(total) + " = " + rational(observed),
                   std::to_string(formula) + "/" + std::to_string(total) + " = " + rational(carefree_density(l)), "exact"});
  }
  return out;
}

std::vector<CheckResult> verify_lipschitz(const VerifyOpts& o) {
  std::vector<CheckResult> out;
  for (double M : o.lip_M)
    for (double R : o.lip_R) {
      const double cnt = static_cast<double>(count_S_exact(M, R));
      const double area = area_S(M, R);
      const double bound = 4 * (boundary_length_bound(M, R) + 1);
      out.push_back({"lipschitz(M=" + format_double(M) + ",R=" + format_double(R) + ")",
                     std::abs(cnt - area) <= bound,
                     "|" + format_double(cnt) + " - " + format_double(area) + "| = " + format_double(std::abs(cnt - area)),
                     "<= " + format_double(bound), "exact inequality"});
    }
  return out;
}

int finish_verify(const std::vector<CheckResult>& checks, const std::string& out) {
  emit(report_json(checks) + "\n", out);
  return all_passed(checks) ? 0 : kExitVerifyFailed;
}

// densities

struct DensityOpts {
  std::uint64_t max_b = 20;
  std::optional<int> tau;
  std::string out;
};

int run_densities(const DensityOpts& o) {
  if (o.tau && (*o.tau < 0 || *o.tau >= 32 || *o.tau % 8 == 0))
    throw QuarticError(ErrorCode::InvalidTau, "tau must be a residue mod 32 not divisible by 8");
  const DensityTable t = DensityTable::build(o.max_b, 13);
  const FieldType types[] = {FieldType::I, FieldType::II, FieldType::III, FieldType::IV, FieldType::V};
  std::ostringstream os;
  os << "b,alpha,psi";
  for (FieldType ty : types) os << ",M_" << to_string(ty) << ",psi_" << to_string(ty);
  if (o.tau) os << ",n_tau,psi_tau";
  os << '\n';
  for (std::uint64_t b = 1; b <= o.max_b; ++b) {
    const double x = static_cast<double>(b);
    os << b << ',' << format_double(alpha(b)) << ',' << format_double(psi(x));
    for (FieldType ty : types)
      os << ',' << rational(t.m_star.at(ty)[b]) << ',' << format_double(psi_star(ty, x));
    if (o.tau) os << ',' << t.n_tau.at(*o.tau)[b] << ',' << format_double(psi_tau(*o.tau, x));
    os << '\n';
  }
  for (const auto& [l, d] : t.d_l) os << "#carefree_density,l=" << l << ",value=" << rational(d) << '\n';
  emit(os.str(), o.out);
  return 0;
}

// histogram

struct HistogramOpts {
  std::string type = "II";
  std::string sign = "+";
  double max_disc = 0;
  std::vector<double> r1_edges{1, 2, 4};
  std::uint64_t b_max = 3;
  std::string out;
};

int run_histogram(const HistogramOpts& o, unsigned threads) {
  const FieldType type = parse_field_type(o.type);
  if (o.sign != "+" && o.sign != "-") throw UsageError("--sign must be + or -");
  const Sign sign = o.sign == "+" ? Sign::Plus : Sign::Minus;
  if (o.r1_edges.size() < 2) throw UsageError("--r1-edges needs at least two values");
  for (std::size_t i = 0; i + 1 < o.r1_edges.size(); ++i)
    if (!(o.r1_edges[i] >= 1 && o.r1_edges[i] < o.r1_edges[i + 1]))
      throw UsageError("--r1-edges must be increasing and >= 1");
  if (o.b_max < 1) throw UsageError("--b-max must be positive");
  std::ostringstream os;
  os << "bin,empirical,predicted,ratio\n";
  for (std::uint64_t b = 1; b <= o.b_max; ++b)
    for (std::size_t i = 0; i + 1 < o.r1_edges.size(); ++i) {
      Rect r{o.r1_edges[i], o.r1_edges[i + 1], static_cast<double>(b), static_cast<double>(b)};
      r.r1_hi_open = i + 2 < o.r1_edges.size();
      const CountReport rep = theorem_ratio_report(type, sign, o.max_disc, r, threads);
      const std::string bin = "[" + format_double(r.R1lo) + "," + format_double(r.R1hi) + (r.r1_hi_open ? ")" : "]") +
                              "x{" + std::to_string(b) + "}";
      const double ratio = rep.predicted > 0 ? static_cast<double>(rep.empirical) / rep.predicted : 0;
      os << bin << ',' << rep.empirical << ',' << format_double(rep.predicted) << ',' << format_double(ratio) << '\n';
    }
  emit(os.str(), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shapes of pure quartic fields: invariants, enumeration and distribution checks"};
  app.name("qshape");
  app.set_config("--config", "", "key=value configuration file");
  app.allow_config_extras(false);
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand
  unsigned threads = 1;
  auto* threads_opt = app.add_option("--threads", threads, "worker threads")->envname("QSHAPE_THREADS")->check(CLI::PositiveNumber);

  ClassifyOpts co;
  auto* classify = app.add_subcommand("classify", "normal forms, type and discriminant of K_m");
  classify->add_option("m", co.m, "fourth-power-free integer")->required();
  classify->add_option("--format", co.format)->check(CLI::IsMember({"text", "json"}));

  ShapeOpts so;
  auto* shape_cmd = app.add_subcommand("shape", "Gram matrices, projection and reduction");
  shape_cmd->add_option("m", so.m)->required();
  shape_cmd->add_flag("--exact", so.exact, "exact entries only");
  shape_cmd->add_flag("--float", so.floating, "floating entries only");
  shape_cmd->add_flag("--reduce", so.reduce, "Minkowski-reduce the projected lattice");
  shape_cmd->add_option("--format", so.format)->check(CLI::IsMember({"text", "json"}));

  EnumerateOpts eo;
  auto* enumerate = app.add_subcommand("enumerate", "fields up to a discriminant or N bound");
  auto* disc_opt = enumerate->add_option("--max-disc", eo.max_disc, "|disc| <= X")->check(CLI::NonNegativeNumber);
  auto* n_opt = enumerate->add_option("--max-N", eo.max_n, "|a| b^(2/3) c <= N")->check(CLI::NonNegativeNumber);
  disc_opt->excludes(n_opt);
  enumerate->add_option("--types", eo.types, "subset of I,II,III,IV,V")->delimiter(',');
  enumerate->add_option("--sign", eo.sign, "+, - or both");
  enumerate->add_option("--rect", eo.rect, "R1lo,R1hi,R2lo,R2hi");
  enumerate->add_option("--tau", eo.tau, "residue of m mod 32");
  enumerate->add_option("--out", eo.out, "output path (default stdout)");
  enumerate->add_option("--format", eo.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 1 on failure");
  verify->require_subcommand(1);
  verify->add_option("--out", vo.out, "JSON report path (default stdout)");
  auto* v_gram = verify->add_subcommand("gram", "determinant, index, torus and embedding checks");
  v_gram->add_option("--max-m", vo.max_m)->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));
  auto* v_count = verify->add_subcommand("counting", "empirical C^tau(N)/N against the limit");
  v_count->add_option("--N", vo.N)->check(CLI::Range(1.0, 1e8));
  v_count->add_option("--R1", vo.R1)->check(CLI::Range(1.0, 1e6));
  v_count->add_option("--R2", vo.R2)->check(CLI::Range(1.0, 1e4));
  v_count->add_option("--tau", vo.tau)->check(CLI::Range(1, 31));
  v_count->add_option("--tolerance", vo.tolerance)->check(CLI::PositiveNumber);
  auto* v_dens = verify->add_subcommand("densities", "brute-force A_l against the closed form");
  v_dens->add_option("--l", vo.primes, "odd primes <= 13")->delimiter(',');
  auto* v_lip = verify->add_subcommand("lipschitz", "lattice count against area and boundary length");
  v_lip->add_option("--M", vo.lip_M)->delimiter(',')->check(CLI::Range(1.0, 1e8));
  v_lip->add_option("--R", vo.lip_R)->delimiter(',')->check(CLI::Range(1.0, 1e6));

  DensityOpts dopt;
  auto* dens = app.add_subcommand("densities", "M_*(b), n_tau(b), alpha and psi tables");
  dens->add_option("--max-b", dopt.max_b)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000}));
  dens->add_option("--tau", dopt.tau);
  dens->add_option("--out", dopt.out);

  HistogramOpts ho;
  auto* hist = app.add_subcommand("histogram", "theorem ratio report over a grid of rectangles");
  hist->add_option("--type", ho.type)->check(CLI::IsMember({"I", "II", "III", "IV", "V"}));
  hist->add_option("--sign", ho.sign);
  hist->add_option("--max-disc", ho.max_disc)->required()->check(CLI::PositiveNumber);
  hist->add_option("--r1-edges", ho.r1_edges)->delimiter(',');
  hist->add_option("--b-max", ho.b_max);
  hist->add_option("--out", ho.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "qshape: error: Usage: " << msg << '\n';
    return kExitUsage;
  }

  // CLI11 drops an invalid environment value silently; reject it instead
  if (threads_opt->count() == 0) {
    if (const char* env = std::getenv("QSHAPE_THREADS"); env && *env) {
      if (!CLI::PositiveNumber(env).empty() || std::string(env).find_first_not_of("0123456789") != std::string::npos) {
        std::cerr << "qshape: error: Usage: QSHAPE_THREADS must be a positive integer, got '" << env << "'\n";
        return kExitUsage;
      }
    }
  }

  try {
    if (*classify) return run_classify(co);
    if (*shape_cmd) return run_shape(so);
    if (*enumerate) return run_enumerate(eo, threads);
    if (*v_gram) return finish_verify(verify_gram(vo), vo.out);
    if (*v_count) return finish_verify(verify_counting(vo, threads), vo.out);
    if (*v_dens) return finish_verify(verify_densities(vo), vo.out);
    if (*v_lip) return finish_verify(verify_lipschitz(vo), vo.out);
    if (*dens) return run_densities(dopt);
    if (*hist) return run_histogram(ho, threads);
  } catch (const QuarticError& e) {
    std::cerr << "qshape: error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "qshape: error: Usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "qshape: error: IOError: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
