#ifndef TRIPENCIL_TOOLS_IO_HPP
#define TRIPENCIL_TOOLS_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tripencil/giep.hpp"
#include "tripencil/oracle.hpp"
#include "tripencil/resolvent.hpp"

namespace tripencil::io {

using nlohmann::json;

// Malformed document: missing field, wrong type, bad complex literal.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(Complex z);  // [re, im]
Complex complex_from_json(const json& j, const std::string& where);

json to_json(const Pencil& pencil);
Pencil pencil_from_json(const json& j);

json to_json(const GiepInstance& instance);
GiepInstance instance_from_json(const json& j);

json to_json(const ReconstructionResult& result);
ReconstructionResult result_from_json(const json& j);

json to_json(const MFunctionTable& table);
json to_json(const DenseMatrix& m);  // rows of [re, im]

json to_json(const MReconstruction& rec);
MReconstruction mreconstruction_from_json(const json& j);

json to_json(const oracle::VerificationReport& report);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& doc);

}  // namespace tripencil::io

#endif
