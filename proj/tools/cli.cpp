#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <optional>

#include "io.hpp"
#include "tripencil/oracle.hpp"
#include "tripencil/resolvent.hpp"

namespace tripencil::cli {

namespace {

using io::json;

// The hypothesis each failure kind violates, for the solver's error line.
std::string hypothesis(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularDelta:
      return "the pole alpha_j = b_j/d_j must be non-real so that Delta_j != 0";
    case ErrorKind::SpectrumCollision:
      return "lambda and mu (or omega) must avoid the spectra of the leading sub-pencils";
    case ErrorKind::PoleCollision:
      return "the evaluation point must avoid the poles b_j/d_j";
    case ErrorKind::DegenerateLastRow:
      return "z c_n != a_n for the last eigenvector component";
    case ErrorKind::HermitianInconsistent:
      return "the spectral data must come from a Hermitian H (solved pair must be conjugate)";
    case ErrorKind::VanishingComponent:
      return "eigenvector components used as divisors must not vanish";
    case ErrorKind::NonRealDiagonal:
      return "the recovered diagonal must be real (data consistent with a Hermitian H)";
    case ErrorKind::DegenerateDifference:
      return "consecutive m-function values must differ";
    case ErrorKind::DegreeDrop:
      return "the characteristic polynomial must have full degree n+1";
    case ErrorKind::NearSingular:
      return "omega must lie in the resolvent set";
    case ErrorKind::GenerationFailed:
      return "an admissible instance must exist within the attempt budget";
    default:
      return "well-formed input";
  }
}

Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != text.substr(0, comma).size()) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string tail = text.substr(comma + 1);
      im = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
    return {re, im};
  } catch (const std::exception&) {
    throw CLI::ValidationError("point", "expected RE or RE,IM, got '" + text + "'");
  }
}

bool is_pair(const json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!(e.is_primitive() || is_pair(e))) return false;
  return true;
}

// Human-readable form: one "path = value" line per leaf.
void print_text(const json& j, std::ostream& out, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      print_text(value, out, prefix.empty() ? key : prefix + "." + key);
  } else if (j.is_array() && !is_flat(j)) {
    for (std::size_t i = 0; i < j.size(); ++i)
      print_text(j[i], out, prefix + "[" + std::to_string(i) + "]");
  } else {
    out << prefix << " = " << j.dump() << '\n';
  }
}

void emit(const json& doc, bool as_json, std::ostream& out) {
  if (as_json)
    out << doc.dump(2) << '\n';
  else
    print_text(doc, out, "");
}

template <class F>
json guarded(F&& f) {
  try {
    return f();
  } catch (const PencilError& e) {
    return json{{"error", e.what()}};
  }
}

json direct_report(const Pencil& pencil, std::optional<Complex> at, bool all, bool spectrum) {
  const std::size_t n = pencil.n();
  json doc{{"n", n}};
  if (at) {
    const Complex z = *at;
    doc["z"] = io::to_json(z);
    const auto P = P_sequence(pencil, z);
    const auto Q = Q_sequence(pencil, z);
    const std::string top = std::to_string(n + 1);
    doc["P_" + top] = io::to_json(P[n + 1]);
    doc["Q_" + top] = io::to_json(Q[n + 1]);
    doc["S_" + top] = guarded([&] { return io::to_json(convergent_S(pencil, n + 1, z)); });
    doc["right_components"] = guarded([&] {
      json v = json::array();
      for (Complex c : right_components(pencil, z)) v.push_back(io::to_json(c));
      return v;
    });
    doc["left_components"] = guarded([&] {
      json v = json::array();
      for (Complex c : left_components(pencil, z)) v.push_back(io::to_json(c));
      return v;
    });
    if (all) {
      json Pj = json::array(), Qj = json::array();
      for (std::size_t m = 0; m <= n + 1; ++m) {
        Pj.push_back(io::to_json(P[m]));
        Qj.push_back(io::to_json(Q[m]));
      }
      doc["P"] = Pj;
      doc["Q"] = Qj;
      for (std::size_t m = 1; m <= n; ++m)
        doc["S_" + std::to_string(m)] =
            guarded([&] { return io::to_json(convergent_S(pencil, m, z)); });
      doc["m_table"] = guarded([&] { return io::to_json(m_table(pencil, z)); });
      json lo = json::array();
      for (std::size_t m = 0; m <= n; ++m) lo.push_back(liouville_ostrogradsky_residual(pencil, m, z));
      doc["liouville_ostrogradsky_residuals"] = lo;
    }
  }
  if (all) {
    const auto kappa = kappa_sequence(pencil);
    doc["kappa"] = kappa.kappa;
    doc["degree_drop"] = kappa.degree_drop;
  }
  if (spectrum) {
    json eig = json::array();
    for (Complex z : oracle::pencil_eigenvalues(pencil)) eig.push_back(io::to_json(z));
    doc["eigenvalues"] = eig;
  }
  return doc;
}

json mfun_report(const Pencil& pencil, Complex omega, std::size_t k, bool reconstruct,
                 std::optional<MReconstruction>& rec) {
  json doc{{"n", pencil.n()}, {"k", k}, {"omega", io::to_json(omega)}};
  doc["m_table"] = io::to_json(m_table(pencil, omega));
  const auto f = ldu_factors(pencil, omega);
  json diffs = json::array();
  for (Complex d : f.differences) diffs.push_back(io::to_json(d));
  doc["ldu"] = {{"upper", io::to_json(f.upper)}, {"differences", diffs}, {"lower", io::to_json(f.lower)}};
  doc["trailing_inverse"] = io::to_json(trailing_inverse(pencil, k, omega));
  if (reconstruct) {
    rec = reconstruct_from_m(pencil, k, omega);
    doc["reconstruction"] = io::to_json(*rec);
  }
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tridiagonal pencil toolkit: inverse eigenvalue reconstruction, m-functions, oracles"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON on stdout");

  std::string pencil_path, instance_path, out_path, truth_path, result_path, at_text, omega_text;
  bool all = false, spectrum = false, reconstruct = false, imaginary_tail = false;
  std::size_t n = 0, k = 0;
  std::uint64_t seed = 0;
  double min_im_ratio = 0.1;
  std::string pick = "extreme";

  auto* direct = app.add_subcommand("direct", "P/Q/S/m values and components at a point");
  direct->add_option("pencil", pencil_path, "pencil JSON")->required();
  direct->add_option("--at", at_text, "evaluation point RE or RE,IM");
  direct->add_flag("--all", all, "full sequences, kappa and identity residuals");
  direct->add_flag("--spectrum", spectrum, "oracle eigenvalues");
  direct->add_flag("--json", as_json);

  auto* solve_cmd = app.add_subcommand("solve", "reconstruct H from a GIEP instance");
  solve_cmd->add_option("instance", instance_path, "instance JSON")->required();
  solve_cmd->add_option("--out", out_path, "write the result JSON here");
  solve_cmd->add_flag("--json", as_json);

  auto* mfun = app.add_subcommand("mfun", "m-table, resolvent factors, trailing inverse");
  mfun->add_option("pencil", pencil_path, "pencil JSON")->required();
  mfun->add_option("--omega", omega_text, "resolvent point RE,IM")->required();
  mfun->add_option("--k", k, "split index")->required();
  mfun->add_flag("--reconstruct", reconstruct, "rebuild b, a from m-functions");
  mfun->add_option("--out", out_path, "write the reconstruction JSON here");
  mfun->add_flag("--json", as_json);

  auto* generate = app.add_subcommand("generate", "write truth.json and instance.json");
  generate->add_option("--n", n, "order index")->required();
  generate->add_option("--k", k, "split index")->required();
  generate->add_option("--seed", seed, "random seed")->required();
  generate->add_option("--min-im-ratio", min_im_ratio, "lower bound on |Im b_j/d_j|, j >= k");
  generate->add_option("--pick", pick, "eigenvalue pair")->check(CLI::IsMember({"extreme", "random"}));
  generate->add_flag("--imaginary-tail", imaginary_tail, "purely imaginary b_j for j >= k");
  generate->add_option("--out", out_path, "output directory")->required();
  generate->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "compare a reconstruction with the truth");
  verify->add_option("--truth", truth_path, "truth pencil JSON")->required();
  verify->add_option("--result", result_path, "result JSON from solve or mfun")->required();
  verify->add_flag("--json", as_json);

  std::vector<std::string> argv_store{"tripencil"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_or_io;
  }

  try {
    if (direct->parsed()) {
      const Pencil pencil = io::pencil_from_json(io::read_json(pencil_path));
      std::optional<Complex> at;
      if (!at_text.empty()) at = parse_point(at_text);
      if (!at && !spectrum && !all) {
        err << "error: direct needs --at, --all or --spectrum\n";
        return usage_or_io;
      }
      emit(direct_report(pencil, at, all, spectrum), as_json, out);
      return ok;
    }

    if (solve_cmd->parsed()) {
      const GiepInstance instance = io::instance_from_json(io::read_json(instance_path));
      for (std::size_t j : real_pole_warnings(instance))
        err << "warning: alpha_" << j << " is real; expect a vanishing Delta_" << j << '\n';
      const ReconstructionResult result = solve(instance);
      const json doc = io::to_json(result);
      if (!out_path.empty()) io::write_json(out_path, doc);
      emit(doc, as_json, out);
      return ok;
    }

    if (mfun->parsed()) {
      const Pencil pencil = io::pencil_from_json(io::read_json(pencil_path));
      std::optional<MReconstruction> rec;
      const json doc = mfun_report(pencil, parse_point(omega_text), k, reconstruct, rec);
      if (!out_path.empty()) {
        if (!rec) {
          err << "error: --out needs --reconstruct\n";
          return usage_or_io;
        }
        io::write_json(out_path, io::to_json(*rec));
      }
      emit(doc, as_json, out);
      return ok;
    }

    if (generate->parsed()) {
      oracle::GeneratorConfig config;
      config.n = n;
      config.k = k;
      config.seed = seed;
      config.min_im_ratio = min_im_ratio;
      config.pick = pick == "random" ? oracle::EigenvaluePick::RandomPair
                                     : oracle::EigenvaluePick::Extreme;
      config.imaginary_tail = imaginary_tail;
      const auto generated = oracle::generate_instance(config);
      const std::filesystem::path dir(out_path);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw io::IoError("cannot create '" + dir.string() + "': " + ec.message());
      io::write_json(dir / "truth.json", io::to_json(generated.truth));
      io::write_json(dir / "instance.json", io::to_json(generated.instance));
      emit(json{{"attempts", generated.attempts},
                {"lambda", generated.instance.lambda},
                {"mu", generated.instance.mu},
                {"truth", (dir / "truth.json").string()},
                {"instance", (dir / "instance.json").string()}},
           as_json, out);
      return ok;
    }

    if (verify->parsed()) {
      const Pencil truth = io::pencil_from_json(io::read_json(truth_path));
      const json doc = io::read_json(result_path);
      const auto report = doc.contains("eigvec_lambda")
                              ? oracle::verify(truth, io::result_from_json(doc))
                              : oracle::verify(truth, io::mreconstruction_from_json(doc));
      out << io::to_json(report).dump(2) << '\n';  // always JSON
      return report.passed ? ok : verify_failed;
    }
  } catch (const PencilError& e) {
    err << "error: " << e.what() << '\n';
    if (!is_precondition_failure(e.kind())) return usage_or_io;
    err << "hypothesis violated: " << hypothesis(e.kind()) << '\n';
    return precondition;
  } catch (const io::SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return usage_or_io;
  } catch (const io::IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return usage_or_io;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return usage_or_io;
  } catch (const io::json::exception& e) {
    err << "schema error: " << e.what() << '\n';
    return usage_or_io;
  }
  return usage_or_io;
}

}  // namespace tripencil::cli
