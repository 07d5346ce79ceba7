// JSON envelopes for circle domains, varieties, lattices and reports.
//
// Output is written by a deterministic emitter: keys in fixed order, floats
// with 17 significant digits, complex numbers as [re, im] pairs, matrices
// row-major with explicit shape.  Identical inputs produce byte-identical
// documents.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "openjac/circle_domain.hpp"
#include "openjac/oav.hpp"

namespace openjac::io {

inline constexpr const char* kSchemaVersion = "openjac/1";

std::string format_double(double v);

std::string dump_circle_domain(const CircleDomainSpec& spec);
CircleDomainSpec parse_circle_domain(const std::string& text);

std::string dump_oav(const OpenAbelianVariety& x);
OpenAbelianVariety parse_oav(const std::string& text);

struct LatticeDocument {
  Eigen::MatrixXi gram;
  std::optional<Eigen::MatrixXi> b;
};

std::string dump_lattice(const LatticeDocument& doc);
LatticeDocument parse_lattice(const std::string& text);

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void add_number(const std::string& name, double value);
  void add_checked(const std::string& name, double value, double tol, bool pass);
  void add_bool(const std::string& name, bool value);
  void add_int(const std::string& name, int64_t value);
  void add_string(const std::string& name, const std::string& value);
  void add_complex(const std::string& name, cplx value);

  bool pass() const;
  std::string to_json() const;
  std::string to_text() const;

 private:
  struct Item {
    std::string name;
    std::string rendered;  // JSON fragment for the value
    std::string display;   // human-readable form
    std::optional<double> tol;
    std::optional<bool> passed;
  };
  std::string command_;
  std::vector<Item> items_;
};

}  // namespace openjac::io
