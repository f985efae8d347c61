// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: acceptance [path-to-tripencil-binary]
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "io.hpp"

namespace tp = tripencil;
namespace fs = std::filesystem;
using tp::Complex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(Complex x, Complex t) { return tp::oracle::relative_error(x, t); }

tp::oracle::GeneratedInstance corpus_instance(int i) {
  tp::oracle::GeneratorConfig cfg;
  cfg.n = 2 + static_cast<std::size_t>(i % 9);
  cfg.k = 1 + static_cast<std::size_t>(i / 9) % (cfg.n - 1);
  cfg.seed = 1000 + static_cast<std::uint64_t>(i);
  return tp::oracle::generate_instance(cfg);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// --- 1 -------------------------------------------------------------------
Outcome round_trip() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0, worst_res = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto g = corpus_instance(i);
    const auto rep = tp::oracle::verify(g.truth, tp::solve(g.instance));
    worst = std::max(worst, rep.max_entry_error());
    worst_res = std::max({worst_res, rep.residual_lambda, rep.residual_mu});
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-8 && worst_res <= 1e-7 && secs <= 10.0,
          fmt("200 instances, max entry err %.2e (<=1e-8), max residual %.2e (<=1e-7), %.2f s (<=10)",
              worst, worst_res, secs)};
}

// --- 2 -------------------------------------------------------------------
Outcome closed_forms() {
  double worst = 0.0, worst_conj = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto g = corpus_instance(i);
    const auto& in = g.instance;
    for (std::size_t t = 0; t + 1 < in.tail_p.size(); ++t) {
      const std::size_t j = in.k + t;
      const auto s = tp::solve_offdiagonal(j, in.J.d(j), in.lambda, in.mu, in.tail_p[t],
                                           in.tail_p[t + 1], in.tail_s[t], in.tail_s[t + 1]);
      worst = std::max(worst, rel(s.closed_form, s.b));
      worst_conj = std::max(worst_conj, rel(s.closed_form_conj, s.conj_unknown));
    }
  }
  return {worst <= 1e-9 && worst_conj <= 1e-9,
          fmt("max rel diff b %.2e, conj b %.2e (<=1e-9)", worst, worst_conj)};
}

// --- 3 -------------------------------------------------------------------
Outcome m_route() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.3, 2.0);
  double vs_truth = 0.0, vs_eig = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto g = corpus_instance(i);
    const std::size_t k = g.instance.k, n = g.truth.n();
    const Complex omega(re(rng), im(rng));
    const auto m = tp::reconstruct_from_m(g.truth, k, omega);
    const auto eig = tp::solve(g.instance);
    for (std::size_t t = 0; t < m.b.size(); ++t) {
      vs_truth = std::max(vs_truth, rel(m.b[t], g.truth.H().b(k + 1 + t)));
      vs_eig = std::max(vs_eig, rel(m.b[t], eig.H.b(k + 1 + t)));
    }
    for (std::size_t t = 0; t < m.a.size(); ++t) {
      vs_truth = std::max(vs_truth, rel(m.a[t], g.truth.H().a(k + 1 + t)));
      vs_eig = std::max(vs_eig, rel(m.a[t], eig.H.a(k + 1 + t)));
    }
    (void)n;
  }
  return {vs_truth <= 1e-8 && vs_eig <= 1e-7,
          fmt("100 instances, vs truth %.2e (<=1e-8), vs eigenpair route %.2e (<=1e-7)", vs_truth,
              vs_eig)};
}

// --- 4 -------------------------------------------------------------------
Outcome resolvent_identities() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double inv_err = 0.0, ldl_err = 0.0, trail_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(i) % 8;  // orders 1..8
    const auto p = tp::oracle::random_pencil(n, 4000 + static_cast<std::uint64_t>(i));
    const auto eig = tp::oracle::pencil_eigenvalues(p);
    // Real point at distance >= 1 from the spectrum: there L* is the adjoint.
    const double omega = u(rng) < 0.5 ? eig.front().real() - 1.0 - u(rng)
                                      : eig.back().real() + 1.0 + u(rng);
    const auto r = tp::resolvent_matrix(p, omega);
    const auto id = tp::DenseMatrix::identity(n + 1);
    inv_err = std::max(inv_err, tp::max_abs_diff(tp::assemble(p, omega) * r, id));

    const auto f = tp::ldu_factors(p, omega);
    tp::DenseMatrix d(n + 1, n + 1);
    for (std::size_t j = 0; j <= n; ++j) d(j, j) = f.differences[j];
    const auto lower_adj = f.lower.adjoint();  // L* in the L D L* reading
    ldl_err = std::max(ldl_err, tp::max_abs_diff(lower_adj * d * f.lower, r));

    for (std::size_t k = 0; k < n; ++k) {
      const auto inv = tp::trailing_inverse(p, k, omega);
      const std::size_t m = n - k;
      trail_err = std::max(trail_err, tp::max_abs_diff(inv * r.block(k + 1, k + 1, m, m),
                                                       tp::DenseMatrix::identity(m)));
    }
  }
  return {inv_err <= 1e-8 && ldl_err <= 1e-9 && trail_err <= 1e-8,
          fmt("50 pairs, (wJ-H)R-I %.2e (<=1e-8), LDL*-R %.2e (<=1e-9), trailing %.2e (<=1e-8)",
              inv_err, ldl_err, trail_err)};
}

// --- 5 -------------------------------------------------------------------
// The L-O sweep runs at orders <= 6. Beyond that the two products in the
// identity exceed the coupling product by up to 1e9 on this distribution and
// the residual is pure rounding (reported, not judged).
Outcome structural() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0), v(0.2, 2.0);
  double lo = 0.0, lo_high = 0.0, trace = 0.0, det = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i) % 8;
    const auto p = tp::oracle::random_pencil(n, 5000 + static_cast<std::uint64_t>(i));
    const Complex z(u(rng), v(rng));
    for (std::size_t m = 0; m <= n; ++m) {
      const double r = tp::liouville_ostrogradsky_residual(p, m, z);
      (n <= 5 ? lo : lo_high) = std::max(n <= 5 ? lo : lo_high, r);
    }
    det = std::max(det, rel(tp::eval_P(p, n + 1, z), tp::oracle::dense_determinant(p, z)));
    if (n >= 2) {
      const auto eig = tp::oracle::pencil_eigenvalues(p);
      for (std::size_t k = 1; k < n; ++k) {
        const auto r = tp::trace_identity_residuals(p, k, eig.front().real(), eig.back().real());
        trace = std::max({trace, r.trailing, r.leading});
      }
    }
  }
  return {lo <= 1e-9 && trace <= 1e-9 && det <= 1e-9,
          fmt("L-O (orders<=6) %.2e, trace identities %.2e, P_{n+1} vs det %.2e (all <=1e-9)", lo,
              trace, det) +
              fmt("; info: L-O at orders 7-9 %.2e", lo_high)};
}

// --- 6 -------------------------------------------------------------------
tp::Pencil with_real_pole(const tp::Pencil& p, std::size_t j, double x) {
  std::vector<Complex> b = p.H().upper();
  b[j] = p.J().d(j) * x;
  return tp::Pencil(p.J(), tp::HermitianTridiagonal(p.H().diag(), b));
}

Outcome real_poles() {
  int false_passes = 0;
  double worst_ratio = 0.0;
  std::string note;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 6;
    const std::size_t k = 1 + static_cast<std::size_t>(i / 6) % (n - 1);
    const std::size_t j = k + static_cast<std::size_t>(i) % (n - k);
    const auto truth = with_real_pole(tp::oracle::random_pencil(n, 6000 + static_cast<std::uint64_t>(i)),
                                      j, 0.3 + 0.1 * i);
    const auto eig = tp::oracle::pencil_eigenvalues(truth);
    const auto inst = tp::oracle::make_instance(truth, k, eig.front().real(), eig.back().real());
    const std::size_t t = j - k;
    const Complex A = std::conj(inst.tail_p[t]) * inst.tail_p[t + 1];
    const Complex B = std::conj(inst.tail_p[t + 1]) * inst.tail_p[t];
    const Complex C = std::conj(inst.tail_s[t]) * inst.tail_s[t + 1];
    const Complex D = std::conj(inst.tail_s[t + 1]) * inst.tail_s[t];
    const double scale = std::abs(A) * std::abs(D) + std::abs(B) * std::abs(C);
    const Complex delta =
        tp::delta_j(std::conj(inst.tail_p[t]), std::conj(inst.tail_p[t + 1]), inst.tail_p[t],
                    inst.tail_p[t + 1], std::conj(inst.tail_s[t]), std::conj(inst.tail_s[t + 1]),
                    inst.tail_s[t], inst.tail_s[t + 1]);
    worst_ratio = std::max(worst_ratio, std::abs(delta) / scale);
    bool raised = false;
    try {
      (void)tp::solve(inst);
    } catch (const tp::PencilError& e) {
      raised = e.kind() == tp::ErrorKind::SingularDelta && e.index() == j;
      if (!raised) note = std::string(" [unexpected: ") + e.what() + "]";
    }
    if (!raised || std::abs(delta) > 1e-10 * scale) ++false_passes;
  }
  return {false_passes == 0,
          fmt("20 cases, max |Delta_j|/scale %.2e (<=1e-10), false passes %.0f", worst_ratio,
              false_passes) + note};
}

// --- 7 -------------------------------------------------------------------
Outcome imaginary_couplings() {
  double x_ratio = 0.0, y_err = 0.0;
  int ratio_fails = 0;
  for (int i = 0; i < 20; ++i) {
    tp::oracle::GeneratorConfig cfg;
    cfg.n = 2 + static_cast<std::size_t>(i) % 7;
    cfg.k = 1 + static_cast<std::size_t>(i / 7) % (cfg.n - 1);
    cfg.seed = 7000 + static_cast<std::uint64_t>(i);
    cfg.imaginary_tail = true;
    const auto g = tp::oracle::generate_instance(cfg);
    const auto& in = g.instance;
    for (std::size_t t = 0; t + 1 < in.tail_p.size(); ++t) {
      const std::size_t j = in.k + t;
      const auto c = tp::classify_imaginary(j, in.tail_p[t], in.tail_p[t + 1], in.tail_s[t],
                                            in.tail_s[t + 1], in.J.d(j), in.lambda, in.mu);
      x_ratio = std::max(x_ratio, std::abs(c.x) / std::abs(c.y));
      const double truth_y = g.truth.H().b(j).imag();
      y_err = std::max(y_err, std::abs(c.y - truth_y) / std::abs(truth_y));
      if (!c.wall_ratio_ok) ++ratio_fails;
    }
  }
  return {x_ratio <= 1e-8 && y_err <= 1e-9 && ratio_fails == 0,
          fmt("20 truths, max |x|/|y| %.2e (<=1e-8), y vs Im b %.2e (<=1e-9), ratio misses %.0f",
              x_ratio, y_err, ratio_fails)};
}

// --- 8 -------------------------------------------------------------------
Outcome positivity() {
  double min_value = 1e300, imag = 0.0, err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto g = corpus_instance(i * 7);
    const std::size_t k = g.instance.k;
    const double mu = g.instance.mu;
    if (!tp::oracle::is_positive_definite(g.truth.J())) return {false, "truth J not PD"};
    const auto w = tp::positivity_witness(g.truth, k, mu);
    const auto s = tp::right_components(g.truth, mu);
    const double form = tp::oracle::dense_quadratic_form(g.truth.J(), 0, k, s).real();
    min_value = std::min(min_value, w.value);
    imag = std::max(imag, std::abs(w.imaginary) / std::abs(w.value));
    err = std::max(err, std::abs(w.value - form) / std::abs(form));
  }
  return {min_value > 0.0 && imag <= 1e-10 && err <= 1e-8,
          fmt("20 truths, min witness %.3e (>0), |Im|/|value| %.2e (<=1e-10), vs dense form %.2e (<=1e-8)",
              min_value, imag, err)};
}

// --- 9 -------------------------------------------------------------------
struct Proc {
  int code = -1;
  std::string err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Proc spawn(const std::string& binary, const std::string& args, const fs::path& err_file) {
  const std::string cmd = quote(binary) + " " + args + " >/dev/null 2>" + quote(err_file.string());
  const int status = std::system(cmd.c_str());
  Proc p;
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_file);
  std::stringstream ss;
  ss << in.rdbuf();
  p.err = ss.str();
  return p;
}

Proc in_process(const std::string& args_line) {
  std::istringstream in(args_line);
  std::vector<std::string> args;
  for (std::string a; in >> a;) args.push_back(a);
  std::ostringstream out, err;
  Proc p;
  p.code = tp::cli::run(args, out, err);
  p.err = err.str();
  return p;
}

Outcome cli_end_to_end(const std::string& binary) {
  const fs::path dir = fs::temp_directory_path() / ("tripencil_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const fs::path err_file = dir / "stderr.txt";
  auto call = [&](const std::string& args) {
    return binary.empty() ? in_process(args) : spawn(binary, args, err_file);
  };
  auto p = [&](const char* name) { return (dir / name).string(); };

  std::string detail;
  bool pass = true;
  const auto gen = call("generate --n 6 --k 2 --seed 99 --out " + dir.string());
  const auto sol = call("solve " + p("instance.json") + " --out " + p("result.json"));
  const auto ver = call("verify --truth " + p("truth.json") + " --result " + p("result.json"));
  pass &= gen.code == 0 && sol.code == 0 && ver.code == 0;
  detail += "pipeline exits " + std::to_string(gen.code) + "/" + std::to_string(sol.code) + "/" +
            std::to_string(ver.code);

  // Corrupted instance: a real coupling at j = 2 makes Delta_2 vanish.
  auto truth = tp::oracle::random_pencil(4, 9);
  truth = with_real_pole(truth, 2, 0.6);
  const auto eig = tp::oracle::pencil_eigenvalues(truth);
  tp::io::write_json(p("corrupt.json"),
                     tp::io::to_json(tp::oracle::make_instance(truth, 1, eig.front().real(),
                                                               eig.back().real())));
  const auto bad = call("solve " + p("corrupt.json"));
  const bool named = bad.err.find("hypothesis violated: the pole alpha_j") != std::string::npos &&
                     bad.err.find("Delta_2") != std::string::npos;
  pass &= bad.code == tp::cli::precondition && named;
  detail += ", corrupted exit " + std::to_string(bad.code) + (named ? " (hypothesis named)" : " (hypothesis NOT named)");

  // Bitwise round trip of every document type the CLI writes.
  bool bitwise = true;
  const auto gen_truth = tp::io::read_json(p("truth.json"));
  const auto pencil = tp::io::pencil_from_json(gen_truth);
  bitwise &= tp::io::pencil_from_json(tp::io::json::parse(tp::io::to_json(pencil).dump())) == pencil;
  const auto inst = tp::io::instance_from_json(tp::io::read_json(p("instance.json")));
  bitwise &= tp::io::instance_from_json(tp::io::json::parse(tp::io::to_json(inst).dump())) == inst;
  bitwise &= tp::io::to_json(inst) == tp::io::read_json(p("instance.json"));
  const auto res_doc = tp::io::read_json(p("result.json"));
  bitwise &= tp::io::to_json(tp::io::result_from_json(res_doc)) == res_doc;
  const auto fresh = tp::solve(inst);
  bitwise &= tp::io::to_json(fresh) == res_doc;
  pass &= bitwise;
  detail += bitwise ? ", round trip bitwise" : ", round trip NOT bitwise";
  detail += binary.empty() ? " [in-process]" : " [binary]";

  fs::remove_all(dir);
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"round-trip reconstruction (eigenpair route)", round_trip},
      {"closed-form agreement", closed_forms},
      {"m-function route", m_route},
      {"resolvent identities", resolvent_identities},
      {"structural identities", structural},
      {"negative control: real poles", real_poles},
      {"purely imaginary couplings", imaginary_couplings},
      {"positivity witness", positivity},
      {"CLI end-to-end", [&] { return cli_end_to_end(binary); }},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
