#include "openjac/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace openjac::io {

using json = nlohmann::json;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::MatrixXi;

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in output");
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

// minimal deterministic emitter
class Writer {
 public:
  void raw(const std::string& s) { out_ += s; }
  void key(const std::string& k) {
    comma();
    out_ += '"' + escape(k) + "\":";
    fresh_ = true;
  }
  void begin_object() {
    comma();
    out_ += '{';
    stack_.push_back(false);
  }
  void end_object() {
    out_ += '}';
    stack_.pop_back();
    fresh_ = false;
  }
  void begin_array() {
    comma();
    out_ += '[';
    stack_.push_back(false);
  }
  void end_array() {
    out_ += ']';
    stack_.pop_back();
    fresh_ = false;
  }
  void value(const std::string& rendered) {
    comma();
    out_ += rendered;
    fresh_ = false;
  }
  void string(const std::string& s) { value('"' + escape(s) + '"'); }
  void number(double v) { value(format_double(v)); }
  void integer(int64_t v) { value(std::to_string(v)); }
  void boolean(bool b) { value(b ? "true" : "false"); }
  void complex_pair(cplx v) {
    begin_array();
    number(v.real());
    number(v.imag());
    end_array();
  }
  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (fresh_) {
      fresh_ = false;
      return;
    }
    if (!stack_.empty()) {
      if (stack_.back()) out_ += ',';
      stack_.back() = true;
    }
  }
  std::string out_;
  std::vector<bool> stack_;
  bool fresh_ = false;
};

void write_matrix(Writer& w, const MatrixXd& m) {
  w.begin_object();
  w.key("rows");
  w.integer(m.rows());
  w.key("cols");
  w.integer(m.cols());
  w.key("data");
  w.begin_array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) w.number(m(i, j));
  w.end_array();
  w.end_object();
}

void write_matrix_c(Writer& w, const MatrixXcd& m) {
  w.begin_object();
  w.key("rows");
  w.integer(m.rows());
  w.key("cols");
  w.integer(m.cols());
  w.key("data");
  w.begin_array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) w.complex_pair(m(i, j));
  w.end_array();
  w.end_object();
}

MatrixXd read_matrix(const json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix data length mismatch");
  MatrixXd m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = data[k++].get<double>();
  return m;
}

MatrixXcd read_matrix_c(const json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix data length mismatch");
  MatrixXcd m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) {
      const auto& p = data[k++];
      m(i, c) = cplx(p.at(0).get<double>(), p.at(1).get<double>());
    }
  return m;
}

json parse_envelope(const std::string& text, const std::string& kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("json parse error: ") + e.what());
  }
  if (j.value("schema", "") != kSchemaVersion)
    throw std::invalid_argument("unsupported schema version");
  if (j.value("kind", "") != kind)
    throw std::invalid_argument("expected document kind '" + kind + "'");
  return j.at("payload");
}

}  // namespace

std::string dump_circle_domain(const CircleDomainSpec& spec) {
  Writer w;
  w.begin_object();
  w.key("schema");
  w.string(kSchemaVersion);
  w.key("kind");
  w.string("circle_domain");
  w.key("payload");
  w.begin_object();
  w.key("outer_direction");
  w.integer(spec.outer_direction);
  w.key("inner_disks");
  w.begin_array();
  for (const DiskSpec& d : spec.inner) {
    w.begin_object();
    w.key("center");
    w.complex_pair(d.center);
    w.key("radius");
    w.number(d.radius);
    w.key("direction");
    w.integer(d.direction);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

CircleDomainSpec parse_circle_domain(const std::string& text) {
  const json p = parse_envelope(text, "circle_domain");
  CircleDomainSpec spec;
  spec.outer_direction = p.value("outer_direction", 1);
  for (const auto& d : p.value("inner_disks", json::array())) {
    DiskSpec disk;
    const auto& c = d.at("center");
    disk.center = cplx(c.at(0).get<double>(), c.at(1).get<double>());
    disk.radius = d.at("radius").get<double>();
    disk.direction = d.value("direction", 1);
    spec.inner.push_back(disk);
  }
  return spec;
}

std::string dump_oav(const OpenAbelianVariety& x) {
  Writer w;
  w.begin_object();
  w.key("schema");
  w.string(kSchemaVersion);
  w.key("kind");
  w.string("oav");
  w.key("payload");
  w.begin_object();
  w.key("truncation");
  w.integer(x.truncation());
  w.key("genus");
  w.integer(x.genus());
  w.key("components");
  w.begin_array();
  for (const ComponentSignature& c : x.signature().components()) {
    w.begin_object();
    w.key("boundaries");
    w.begin_array();
    for (const BoundaryMark& b : c.boundaries) {
      w.begin_object();
      w.key("id");
      w.integer(b.id);
      w.key("outbound");
      w.boolean(b.outbound);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("reference");
  w.begin_array();
  for (BoundaryId id : x.reference().ids()) w.integer(id);
  w.end_array();
  const bool normal = x.normal_form();
  w.key("normal_form");
  w.boolean(normal);
  if (!normal) {
    w.key("iota");
    write_matrix(w, x.iota());
    w.key("s");
    write_matrix(w, x.s());
    w.key("lattice");
    write_matrix(w, x.lattice());
  }
  w.key("w");
  write_matrix_c(w, x.w());
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

OpenAbelianVariety parse_oav(const std::string& text) {
  const json p = parse_envelope(text, "oav");
  const int truncation = p.at("truncation").get<int>();
  const int genus = p.at("genus").get<int>();

  std::vector<ComponentSignature> comps;
  int comp_id = 0;
  for (const auto& jc : p.at("components")) {
    ComponentSignature c;
    c.component_id = comp_id++;
    for (const auto& jb : jc.at("boundaries"))
      c.boundaries.push_back({jb.at("id").get<int>(), jb.at("outbound").get<bool>()});
    comps.push_back(c);
  }
  const Signature sig(comps);
  std::vector<BoundaryId> ref_ids;
  for (const auto& ji : p.at("reference")) ref_ids.push_back(ji.get<int>());
  const Ordering ref(ref_ids);

  const MatrixXcd w = read_matrix_c(p.at("w"));
  const Chart chart(sig, truncation);
  const int dv = chart.dim();
  const int d = dv + 2 * genus;

  MatrixXd iota, s, lattice;
  if (p.value("normal_form", true)) {
    iota = MatrixXd::Zero(d, dv);
    iota.topLeftCorner(dv, dv).setIdentity();
    s = MatrixXd::Zero(d, d);
    if (dv > 0) s.topLeftCorner(dv, dv) = chart.gram(ref);
    if (genus > 0) {
      s.block(dv, dv + genus, genus, genus).setIdentity();
      s.block(dv + genus, dv, genus, genus) = -MatrixXd::Identity(genus, genus);
    }
    lattice = MatrixXd::Zero(d, 2 * genus);
    lattice.bottomRightCorner(2 * genus, 2 * genus).setIdentity();
  } else {
    iota = read_matrix(p.at("iota"));
    s = read_matrix(p.at("s"));
    lattice = read_matrix(p.at("lattice"));
  }
  return OpenAbelianVariety(sig, truncation, ref, iota, s, w, lattice);
}

std::string dump_lattice(const LatticeDocument& doc) {
  Writer w;
  w.begin_object();
  w.key("schema");
  w.string(kSchemaVersion);
  w.key("kind");
  w.string("lattice");
  w.key("payload");
  w.begin_object();
  w.key("gram");
  write_matrix(w, doc.gram.cast<double>());
  if (doc.b) {
    w.key("b");
    write_matrix(w, doc.b->cast<double>());
  }
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

LatticeDocument parse_lattice(const std::string& text) {
  const json p = parse_envelope(text, "lattice");
  LatticeDocument doc;
  const MatrixXd g = read_matrix(p.at("gram"));
  doc.gram = MatrixXi(g.rows(), g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      doc.gram(i, j) = static_cast<int>(std::llround(g(i, j)));
      if (std::abs(g(i, j) - doc.gram(i, j)) > 1e-9)
        throw std::invalid_argument("gram matrix must be integral");
    }
  if (p.contains("b")) {
    const MatrixXd b = read_matrix(p.at("b"));
    MatrixXi bi(b.rows(), b.cols());
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        bi(i, j) = static_cast<int>(std::llround(b(i, j)));
    doc.b = bi;
  }
  return doc;
}

void Report::add_number(const std::string& name, double value) {
  items_.push_back({name, format_double(value), format_double(value), {}, {}});
}

void Report::add_checked(const std::string& name, double value, double tol, bool pass) {
  items_.push_back({name, format_double(value), format_double(value), tol, pass});
}

void Report::add_bool(const std::string& name, bool value) {
  items_.push_back({name, value ? "true" : "false", value ? "true" : "false", {}, {}});
}

void Report::add_int(const std::string& name, int64_t value) {
  items_.push_back({name, std::to_string(value), std::to_string(value), {}, {}});
}

void Report::add_string(const std::string& name, const std::string& value) {
  items_.push_back({name, '"' + escape(value) + '"', value, {}, {}});
}

void Report::add_complex(const std::string& name, cplx value) {
  const std::string rendered =
      "[" + format_double(value.real()) + "," + format_double(value.imag()) + "]";
  items_.push_back(
      {name, rendered, format_double(value.real()) + " + " + format_double(value.imag()) + "i",
       {}, {}});
}

bool Report::pass() const {
  for (const Item& it : items_)
    if (it.passed && !*it.passed) return false;
  return true;
}

std::string Report::to_json() const {
  Writer w;
  w.begin_object();
  w.key("schema");
  w.string(kSchemaVersion);
  w.key("kind");
  w.string("report");
  w.key("payload");
  w.begin_object();
  w.key("command");
  w.string(command_);
  w.key("items");
  w.begin_array();
  for (const Item& it : items_) {
    w.begin_object();
    w.key("name");
    w.string(it.name);
    w.key("value");
    w.value(it.rendered);
    if (it.tol) {
      w.key("tol");
      w.number(*it.tol);
    }
    if (it.passed) {
      w.key("pass");
      w.boolean(*it.passed);
    }
    w.end_object();
  }
  w.end_array();
  w.key("pass");
  w.boolean(pass());
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "# " << command_ << "\n";
  for (const Item& it : items_) {
    os << it.name << ": " << it.display;
    if (it.tol) os << "  (tol " << format_double(*it.tol) << ")";
    if (it.passed) os << (*it.passed ? "  PASS" : "  FAIL");
    os << "\n";
  }
  os << "overall: " << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace openjac::io
