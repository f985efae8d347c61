#include "io.hpp"

#include <fstream>
#include <sstream>

namespace tripencil::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw SchemaError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<double> reals(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Complex> complexes(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json complex_array(const std::vector<Complex>& v) {
  json out = json::array();
  for (Complex z : v) out.push_back(to_json(z));
  return out;
}

void check_n(const json& j, std::size_t order) {
  if (j.contains("n") && count(j.at("n"), "n") + 1 != order)
    throw SchemaError("field 'n' disagrees with the length of 'c'");
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(where + ": complex numbers are written [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Pencil& pencil) {
  return json{{"n", pencil.n()},
              {"c", pencil.J().diag()},
              {"d", pencil.J().off()},
              {"a", pencil.H().diag()},
              {"b", complex_array(pencil.H().upper())}};
}

Pencil pencil_from_json(const json& j) {
  auto c = reals(field(j, "c"), "c");
  check_n(j, c.size());
  return Pencil(SymmetricTridiagonal(std::move(c), reals(field(j, "d"), "d")),
                HermitianTridiagonal(reals(field(j, "a"), "a"), complexes(field(j, "b"), "b")));
}

json to_json(const GiepInstance& instance) {
  json out{{"n", instance.n()},
           {"k", instance.k},
           {"c", instance.J.diag()},
           {"d", instance.J.off()},
           {"a", instance.head_a},
           {"b", complex_array(instance.head_b)},
           {"lambda", instance.lambda},
           {"mu", instance.mu},
           {"tail_p", complex_array(instance.tail_p)},
           {"tail_s", complex_array(instance.tail_s)}};
  if (instance.poles) out["poles"] = complex_array(*instance.poles);
  return out;
}

GiepInstance instance_from_json(const json& j) {
  auto c = reals(field(j, "c"), "c");
  check_n(j, c.size());
  GiepInstance out{SymmetricTridiagonal(std::move(c), reals(field(j, "d"), "d")),
                   count(field(j, "k"), "k"),
                   reals(field(j, "a"), "a"),
                   complexes(field(j, "b"), "b"),
                   number(field(j, "lambda"), "lambda"),
                   number(field(j, "mu"), "mu"),
                   complexes(field(j, "tail_p"), "tail_p"),
                   complexes(field(j, "tail_s"), "tail_s"),
                   std::nullopt};
  if (j.contains("poles") && !j.at("poles").is_null()) out.poles = complexes(j.at("poles"), "poles");
  out.validate();
  return out;
}

json to_json(const ReconstructionResult& result) {
  json flags = json::array();
  for (const auto& f : result.imaginary_flags)
    flags.push_back({{"j", f.j}, {"x", f.x}, {"y", f.y}, {"ratio", f.ratio},
                     {"wall_ratio_ok", f.wall_ratio_ok}});
  return json{{"n", result.H.order() - 1},
              {"k", result.k},
              {"lambda", result.lambda},
              {"mu", result.mu},
              {"a", result.H.diag()},
              {"b", complex_array(result.H.upper())},
              {"head_p", complex_array(result.head_p)},
              {"head_s", complex_array(result.head_s)},
              {"eigvec_lambda", complex_array(result.eigvec_lambda)},
              {"eigvec_mu", complex_array(result.eigvec_mu)},
              {"deltas", complex_array(result.deltas)},
              {"residual_lambda", result.residual_lambda},
              {"residual_mu", result.residual_mu},
              {"imaginary_flags", flags}};
}

ReconstructionResult result_from_json(const json& j) {
  ReconstructionResult out{
      .H = HermitianTridiagonal(reals(field(j, "a"), "a"), complexes(field(j, "b"), "b"))};
  out.k = count(field(j, "k"), "k");
  out.lambda = number(field(j, "lambda"), "lambda");
  out.mu = number(field(j, "mu"), "mu");
  out.head_p = complexes(field(j, "head_p"), "head_p");
  out.head_s = complexes(field(j, "head_s"), "head_s");
  out.eigvec_lambda = complexes(field(j, "eigvec_lambda"), "eigvec_lambda");
  out.eigvec_mu = complexes(field(j, "eigvec_mu"), "eigvec_mu");
  out.deltas = complexes(field(j, "deltas"), "deltas");
  out.residual_lambda = number(field(j, "residual_lambda"), "residual_lambda");
  out.residual_mu = number(field(j, "residual_mu"), "residual_mu");
  if (j.contains("imaginary_flags")) {
    for (const auto& f : j.at("imaginary_flags")) {
      ImaginaryClassification c;
      c.j = count(field(f, "j"), "imaginary_flags.j");
      c.x = number(field(f, "x"), "imaginary_flags.x");
      c.y = number(field(f, "y"), "imaginary_flags.y");
      const json& ratio = field(f, "ratio");
      c.ratio = ratio.is_null() ? std::numeric_limits<double>::infinity()
                                : number(ratio, "imaginary_flags.ratio");
      c.wall_ratio_ok = field(f, "wall_ratio_ok").get<bool>();
      out.imaginary_flags.push_back(c);
    }
  }
  return out;
}

json to_json(const MFunctionTable& table) {
  return json{{"omega", to_json(table.omega)},
              {"values", complex_array(table.values)},
              {"differences", complex_array(table.differences)}};
}

json to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const MReconstruction& rec) {
  return json{{"route", "m-function"},
              {"k", rec.k},
              {"omega", to_json(rec.omega)},
              {"b", complex_array(rec.b)},
              {"a", rec.a}};
}

MReconstruction mreconstruction_from_json(const json& j) {
  return MReconstruction{count(field(j, "k"), "k"), complex_from_json(field(j, "omega"), "omega"),
                         complexes(field(j, "b"), "b"), reals(field(j, "a"), "a")};
}

json to_json(const oracle::VerificationReport& report) {
  json errors{{"a", json::object()}, {"b", json::object()}};
  for (const auto& e : report.entry_errors)
    errors[std::string(1, e.entry)][std::to_string(e.index)] = e.error;
  json out{{"passed", report.passed},
           {"pipeline", report.pipeline},
           {"entry_errors", errors},
           {"residual_lambda", report.residual_lambda},
           {"residual_mu", report.residual_mu},
           {"delta_magnitudes", report.delta_magnitudes}};
  if (!report.delta_magnitudes.empty())
    out["min_delta"] = *std::min_element(report.delta_magnitudes.begin(),
                                         report.delta_magnitudes.end());
  if (report.worst)
    out["worst"] = {{"entry", std::string(1, report.worst->entry)},
                    {"index", report.worst->index},
                    {"error", report.worst->error}};
  return out;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace tripencil::io
