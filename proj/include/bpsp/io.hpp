#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "bpsp/error.hpp"
#include "bpsp/instance.hpp"
#include "bpsp/ion.hpp"
#include "bpsp/ising.hpp"

namespace bpsp::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Shortest round-trip decimal form, locale independent.
inline std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

struct ParsedInstance {
  BpspInstance instance;
  /// Original label of each car when the input used non-integer labels;
  /// empty when the identifiers were already 0..n-1.
  std::vector<std::string> labels;
};

/// Parses one {"n": ..., "sequence": [...]} object. Integer identifiers must
/// already be dense; string labels are renumbered by first appearance.
inline ParsedInstance parse_instance(const json& obj) {
  if (!obj.is_object() || !obj.contains("sequence") || !obj["sequence"].is_array()) {
    throw Error(ErrorKind::Parse, "expected an object with a \"sequence\" array");
  }
  const auto& seq = obj["sequence"];
  std::vector<Car> cars;
  cars.reserve(seq.size());
  std::vector<std::string> labels;
  const bool all_ints = std::all_of(seq.begin(), seq.end(), [](const json& v) { return v.is_number_integer(); });
  if (all_ints) {
    for (const auto& v : seq) cars.push_back(v.get<Car>());
  } else {
    std::map<std::string, Car> ids;
    for (const auto& v : seq) {
      const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
      auto [it, inserted] = ids.emplace(label, static_cast<Car>(labels.size()));
      if (inserted) labels.push_back(label);
      cars.push_back(it->second);
    }
  }
  ParsedInstance parsed{validate(std::move(cars)), std::move(labels)};
  if (obj.contains("n")) {
    if (!obj["n"].is_number_integer() || obj["n"].get<std::int64_t>() != parsed.instance.n()) {
      throw Error(ErrorKind::Parse, "field n disagrees with the sequence length");
    }
  }
  return parsed;
}

inline std::string instance_to_jsonl(const BpspInstance& inst) {
  ordered_json obj;
  obj["n"] = inst.n();
  obj["sequence"] = std::vector<Car>(inst.sequence().begin(), inst.sequence().end());
  return obj.dump();
}

inline std::vector<ParsedInstance> read_jsonl(std::istream& in, const std::string& source = "<stream>") {
  std::vector<ParsedInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_instance(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.kind(), source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<ParsedInstance> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_jsonl(in, path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

/// {"n":..., "couplings":[[i,j,J],...], "constant":..., "bit_order":...}
inline ordered_json graph_to_json(const CouplingGraph& g) {
  ordered_json obj;
  obj["n"] = g.n();
  ordered_json couplings = ordered_json::array();
  for (const auto& c : g.couplings()) couplings.push_back({c.i, c.j, c.J});
  obj["couplings"] = std::move(couplings);
  obj["constant"] = g.constant();
  obj["bit_order"] = "qubit i is bit i of the basis index; |0> is spin +1 (first color 0)";
  return obj;
}

inline CouplingGraph graph_from_json(const json& obj) {
  try {
    std::vector<Coupling> couplings;
    for (const auto& c : obj.at("couplings")) {
      couplings.push_back({c.at(0).get<Qubit>(), c.at(1).get<Qubit>(), c.at(2).get<std::int32_t>()});
    }
    return CouplingGraph(obj.at("n").get<std::int32_t>(), std::move(couplings),
                         obj.value("constant", std::int64_t{0}));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline ordered_json circuit_to_json(const ion::NativeCircuit& circuit) {
  ordered_json obj;
  obj["n"] = circuit.n;
  ordered_json gates = ordered_json::array();
  for (const auto& gate : circuit.gates) {
    ordered_json g;
    if (const auto* xx = std::get_if<ion::RxxGate>(&gate)) {
      g["kind"] = "rxx";
      g["qubits"] = {xx->a, xx->b};
      g["angle"] = xx->angle;
    } else if (const auto* r = std::get_if<ion::RGate>(&gate)) {
      g["kind"] = "r";
      g["qubit"] = r->qubit;
      g["theta"] = r->theta;
      g["phi"] = r->phi;
    } else if (const auto* z = std::get_if<ion::RzGate>(&gate)) {
      g["kind"] = "rz";
      g["qubit"] = z->qubit;
      g["theta"] = z->theta;
    }
    gates.push_back(std::move(g));
  }
  obj["gates"] = std::move(gates);
  return obj;
}

inline ion::NativeCircuit circuit_from_json(const json& obj) {
  try {
    ion::NativeCircuit circuit;
    circuit.n = obj.at("n").get<std::int32_t>();
    for (const auto& g : obj.at("gates")) {
      const auto kind = g.at("kind").get<std::string>();
      if (kind == "rxx") {
        circuit.gates.emplace_back(ion::RxxGate{g.at("qubits").at(0).get<Qubit>(), g.at("qubits").at(1).get<Qubit>(),
                                                g.at("angle").get<double>()});
      } else if (kind == "r") {
        circuit.gates.emplace_back(
            ion::RGate{g.at("qubit").get<Qubit>(), g.at("theta").get<double>(), g.at("phi").get<double>()});
      } else if (kind == "rz") {
        circuit.gates.emplace_back(ion::RzGate{g.at("qubit").get<Qubit>(), g.at("theta").get<double>()});
      } else {
        throw Error(ErrorKind::Parse, "unknown gate kind " + kind);
      }
    }
    return circuit;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

/// Minimal CSV writer: fixed column order, '.' decimals, LF endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { write_row(header); }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> out;
    (out.push_back(cell(cells)), ...);
    if (out.size() != columns_) throw Error(ErrorKind::InvalidArgument, "CSV row has wrong column count");
    write_row(out);
  }

  const std::string& str() const noexcept { return text_; }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return format_double(v); }
  template <class T>
    requires std::is_integral_v<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text_ += ',';
      text_ += cells[k];
    }
    text_ += '\n';
  }

  std::size_t columns_;
  std::string text_;
};

}  // namespace bpsp::io
