#include "unifex/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "unifex/besselexp.hpp"
#include "unifex/errormodel.hpp"
#include "unifex/kummerexp.hpp"
#include "unifex/norlund.hpp"
#include "unifex/refseries.hpp"

namespace unifex::cli {

namespace {

const char* kConventionNote =
    "# convention: bessel-type methods evaluate F(a;b;-z^2/4) at the given z; "
    "kummer-type methods evaluate F(a;b;-z); series evaluates F(a;b;z) directly";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex v) {
  if (v.imag() == 0.0) return fmt17(v.real());
  char buf[140];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", v.real(), v.imag());
  return buf;
}

// Tokens: RE, or RE+IMj / RE-IMj (exponents allowed), or IMj alone.
Complex parse_complex_token(const std::string& tok) {
  if (tok.empty()) throw CLI::ValidationError("empty complex token");
  std::string s = tok;
  bool has_j = s.back() == 'j' || s.back() == 'J';
  if (!has_j) {
    std::size_t pos = 0;
    double re = std::stod(s, &pos);
    if (pos != s.size()) throw CLI::ValidationError("bad number '" + tok + "'");
    return {re, 0.0};
  }
  s.pop_back();
  // split at the last +/- not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  }
  if (split == std::string::npos) {
    std::size_t pos = 0;
    double im = std::stod(s, &pos);
    if (pos != s.size()) throw CLI::ValidationError("bad complex token '" + tok + "'");
    return {0.0, im};
  }
  std::size_t pos = 0;
  double re = std::stod(s.substr(0, split), &pos);
  if (pos != split) throw CLI::ValidationError("bad complex token '" + tok + "'");
  std::string imtext = s.substr(split);
  if (imtext == "+") imtext = "1";
  else if (imtext == "-") imtext = "-1";
  double im = std::stod(imtext, &pos);
  if (pos != imtext.size()) throw CLI::ValidationError("bad complex token '" + tok + "'");
  return {re, im};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  if (s.empty()) return out;
  for (const std::string& tok : split_commas(s)) out.push_back(parse_complex_token(tok));
  return out;
}

Complex parse_z(const std::string& s) {
  std::vector<std::string> parts = split_commas(s);
  if (parts.size() == 1) return {std::stod(parts[0]), 0.0};
  if (parts.size() == 2) return {std::stod(parts[0]), std::stod(parts[1])};
  throw CLI::ValidationError("--z expects RE or RE,IM");
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& tok : split_commas(s)) out.push_back(std::stoi(tok));
  return out;
}

double env_tolerance() {
  const char* v = std::getenv("UNIFEX_TOL");
  if (v == nullptr || *v == '\0') return 1e-13;
  char* end = nullptr;
  double t = std::strtod(v, &end);
  if (end == v || t <= 0.0) return 1e-13;
  return t;
}

void write_records(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kConventionNote << "\n";
  os << "z_re,z_im,method,n_terms,val_re,val_im,ref_re,ref_im,abs_err\n";
  for (const SweepRecord& r : records) {
    // abs_err recomputed from the row being written
    double err = std::abs(Complex(r.val_re - r.ref_re, r.val_im - r.ref_im));
    os << fmt17(r.z_re) << ',' << fmt17(r.z_im) << ',' << r.method << ',' << r.n_terms << ','
       << fmt17(r.val_re) << ',' << fmt17(r.val_im) << ',' << fmt17(r.ref_re) << ','
       << fmt17(r.ref_im) << ',' << fmt17(err) << "\n";
  }
}

struct SweepArgs {
  std::string method;
  std::string a_text, b_text;
  std::string region{"strip"};
  double lambda{2.0};
  double re_min{0.0}, re_max{40.0};
  double im_min{0.0}, im_max{0.0};
  std::string grid{"41x9"};
  std::string terms{"8"};
  std::string out{"-"};
};

RegionSpec make_region(const SweepArgs& s) {
  std::size_t x = s.grid.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--grid expects NxM");
  int n_re = std::stoi(s.grid.substr(0, x));
  int n_im = std::stoi(s.grid.substr(x + 1));
  if (s.region == "strip") {
    return RegionSpec::strip(s.lambda, {s.re_min, s.re_max}, n_re, n_im);
  }
  if (s.region == "halfplane") {
    return RegionSpec::half_plane(s.lambda, {s.re_min, s.re_max}, {s.im_min, s.im_max}, n_re,
                                  n_im);
  }
  throw CLI::ValidationError("--region must be strip or halfplane");
}

int cmd_eval(const std::string& method, const std::vector<Complex>& a,
             const std::vector<Complex>& b, Complex z, int terms, std::optional<int> m_override,
             double tol, std::ostream& out) {
  Complex value;
  if (method == "series") {
    // --terms is the truncation order here as well: a plain partial sum.
    Complex term(1.0, 0.0), sum(0.0, 0.0);
    if (a.size() > b.size()) throw PreconditionError("series: requires q <= p");
    (void)tol;
    for (int k = 0; k < terms; ++k) {
      sum += term;
      Complex f = z / static_cast<double>(k + 1);
      for (const Complex& ai : a) f *= ai + static_cast<double>(k);
      for (const Complex& bj : b) f /= bj + static_cast<double>(k);
      term *= f;
    }
    value = detail::ensure_finite(sum, "series");
  } else if (method == "bessel") {
    value = bessel_expansion(a, b, z, terms).value;
  } else if (method == "bessel-elem") {
    value = elementary_bessel_expansion(norlund_coeffs(a, b, terms), z, terms, m_override).value;
  } else if (method == "kummer") {
    value = kummer_expansion(a, b, z, terms).value;
  } else if (method == "kummer-elem") {
    value = elementary_kummer_expansion(make_kummer_context(a, b, terms), z, terms, m_override)
                .value;
  } else {
    throw PreconditionError("eval: unknown method '" + method + "'");
  }
  out << fmt17(value.real()) << ' ' << fmt17(value.imag()) << "\n";
  return 0;
}

int cmd_coeffs(const std::vector<Complex>& a, const std::vector<Complex>& b, int n,
               int pole_scan, std::ostream& out) {
  NorlundTable t = norlund_coeffs(a, b, n, pole_scan);
  out << "# norlund coefficients g_n followed by g_n/Gamma(psi+n); psi = " << fmt_complex(t.psi)
      << "\n";
  if (std::isinf(t.pole_a)) {
    out << "# pole: none within scan depth (all candidates cancelled)\n";
  } else {
    out << "# pole: a=" << fmt17(t.pole_a) << ", r=" << t.pole_r << "\n";
  }
  for (int i = 0; i < n; ++i) {
    out << i << ',' << fmt_complex(t.coeff(i)) << "\n";
  }
  return 0;
}

struct FigurePanel {
  std::vector<int> n_values;
  double lo, hi;
  int points;
};

void write_figure(const std::filesystem::path& path, const std::string& method,
                  const std::vector<Complex>& a, const std::vector<Complex>& b,
                  const std::vector<FigurePanel>& panels, double tol) {
  std::vector<SweepRecord> all;
  for (const FigurePanel& p : panels) {
    RegionSpec region =
        (method == "kummer" || method == "kummer-elem")
            ? RegionSpec::half_plane(p.lo, {p.lo, p.hi}, {0.0, 0.0}, p.points, 1)
            : RegionSpec::strip(1.0, {p.lo, p.hi}, p.points, 1);
    SeriesOptions opts;
    opts.tol = tol;
    std::vector<SweepRecord> recs = sweep_region(method, a, b, region, p.n_values, opts);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw PreconditionError("figures: cannot open " + path.string() + " for writing");
  write_records(os, all);
}

int cmd_figures(const std::string& out_dir, double tol, std::ostream& out) {
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const std::vector<Complex> a_b{{3.0, 0.0}};
  const std::vector<Complex> b_b{{3.5, 0.0}, {5.0, 0.0}};
  const std::vector<Complex> a_k{{1.0, 0.0}, {1.5, 0.0}};
  const std::vector<Complex> b_k{{2.0, 0.0}, {3.0, 0.0}};

  write_figure(dir / "fig1.csv", "bessel-elem", a_b, b_b,
               {{{2}, 0.0, 15.0, 301}, {{2}, 15.0, 50.0, 301}}, tol);
  out << (dir / "fig1.csv").string() << "\n";
  write_figure(dir / "fig2.csv", "bessel", a_b, b_b,
               {{{1, 3, 5}, 0.0, 15.0, 301}, {{1, 10, 20}, 15.0, 50.0, 301}}, tol);
  out << (dir / "fig2.csv").string() << "\n";
  write_figure(dir / "fig3.csv", "bessel-elem", a_b, b_b,
               {{{1, 3, 5}, 0.0, 15.0, 301}, {{1, 10, 20}, 15.0, 50.0, 301}}, tol);
  out << (dir / "fig3.csv").string() << "\n";
  write_figure(dir / "fig4.csv", "kummer", a_k, b_k,
               {{{10, 20, 30}, 0.0, 50.0, 201}, {{50, 100, 200}, 0.0, 50.0, 201}}, tol);
  out << (dir / "fig4.csv").string() << "\n";
  write_figure(dir / "fig5.csv", "kummer-elem", a_k, b_k,
               {{{20, 40, 80}, 0.0, 15.0, 201}, {{20, 40, 80}, 15.0, 50.0, 201}}, tol);
  out << (dir / "fig5.csv").string() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"uniform convergent expansions of generalized hypergeometric functions"};
  app.require_subcommand(1);
  double tol = env_tolerance();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate one method at one point");
  std::string e_method, e_a, e_b, e_z;
  int e_terms = 1;
  int e_m_override = -1;
  eval->add_option("--method", e_method, "series|bessel|bessel-elem|kummer|kummer-elem")
      ->required();
  eval->add_option("--a", e_a, "upper parameters, comma separated (RE or RE+IMj)");
  eval->add_option("--b", e_b, "lower parameters")->required();
  eval->add_option("--z", e_z, "evaluation point RE[,IM]")->required();
  eval->add_option("--terms", e_terms, "truncation order N")->required();
  eval->add_option("--m-override", e_m_override, "override the inner order m (elementary forms)");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "print norlund coefficients");
  std::string c_a, c_b;
  int c_n = 1, c_scan = 8;
  coeffs->add_option("--a", c_a, "upper parameters");
  coeffs->add_option("--b", c_b, "lower parameters")->required();
  coeffs->add_option("--n", c_n, "number of coefficients")->required();
  coeffs->add_option("--pole-scan", c_scan, "pole scan depth");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a method against the series over a region");
  SweepArgs s;
  sweep->add_option("--method", s.method)->required();
  sweep->add_option("--a", s.a_text);
  sweep->add_option("--b", s.b_text)->required();
  sweep->add_option("--region", s.region, "strip|halfplane");
  sweep->add_option("--lambda", s.lambda);
  sweep->add_option("--re-min", s.re_min);
  sweep->add_option("--re-max", s.re_max);
  sweep->add_option("--im-min", s.im_min);
  sweep->add_option("--im-max", s.im_max);
  sweep->add_option("--grid", s.grid, "NxM");
  sweep->add_option("--terms", s.terms, "comma separated N list");
  sweep->add_option("--out", s.out, "output file ('-' for stdout)");

  // rates
  auto* rates = app.add_subcommand("rates", "log-log decay-rate fit over a region");
  SweepArgs r;
  r.terms = "8,16,32,64,128";
  rates->add_option("--method", r.method)->required();
  rates->add_option("--a", r.a_text);
  rates->add_option("--b", r.b_text)->required();
  rates->add_option("--region", r.region);
  rates->add_option("--lambda", r.lambda);
  rates->add_option("--re-min", r.re_min);
  rates->add_option("--re-max", r.re_max);
  rates->add_option("--im-min", r.im_min);
  rates->add_option("--im-max", r.im_max);
  rates->add_option("--grid", r.grid);
  rates->add_option("--n-list", r.terms, "comma separated N list (>= 4 values)");

  // figures
  auto* figures = app.add_subcommand("figures", "emit the standard CSV sweep set");
  std::string out_dir;
  figures->add_option("--out-dir", out_dir)->required();

  std::vector<std::string> argv_store;
  argv_store.push_back("unifex");
  for (const std::string& s2 : args) argv_store.push_back(s2);
  std::vector<const char*> argv;
  for (const std::string& s2 : argv_store) argv.push_back(s2.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 64;
  }

  try {
    if (eval->parsed()) {
      std::optional<int> mo;
      if (eval->count("--m-override") > 0) mo = e_m_override;
      return cmd_eval(e_method, parse_complex_list(e_a), parse_complex_list(e_b), parse_z(e_z),
                      e_terms, mo, tol, out);
    }
    if (coeffs->parsed()) {
      return cmd_coeffs(parse_complex_list(c_a), parse_complex_list(c_b), c_n, c_scan, out);
    }
    if (sweep->parsed()) {
      SeriesOptions opts;
      opts.tol = tol;
      std::vector<SweepRecord> recs =
          sweep_region(s.method, parse_complex_list(s.a_text), parse_complex_list(s.b_text),
                       make_region(s), parse_int_list(s.terms), opts);
      if (s.out == "-") {
        write_records(out, recs);
      } else {
        std::ofstream os(s.out, std::ios::binary);
        if (!os) throw PreconditionError("sweep: cannot open " + s.out + " for writing");
        write_records(os, recs);
      }
      return 0;
    }
    if (rates->parsed()) {
      Method m;
      if (!method_from_tag(r.method, m)) {
        throw PreconditionError("rates: unknown method '" + r.method + "'");
      }
      SeriesOptions opts;
      opts.tol = tol;
      RateFit fit = fit_rate(m, parse_complex_list(r.a_text), parse_complex_list(r.b_text),
                             make_region(r), parse_int_list(r.terms), opts);
      out << "slope,intercept,r_squared,expected_slope\n";
      out << fmt17(fit.slope) << ',' << fmt17(fit.intercept) << ',' << fmt17(fit.r_squared)
          << ',' << fmt17(fit.expected_slope) << "\n";
      return 0;
    }
    if (figures->parsed()) {
      return cmd_figures(out_dir, tol, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 64;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "bad numeric argument: " << e.what() << "\n";
    return 64;
  }
  return 0;
}

}  // namespace unifex::cli
