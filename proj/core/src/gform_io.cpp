#include "holoframe/gform_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

namespace holoframe {

namespace {

constexpr char kMagic[8] = {'H', 'F', 'G', 'F', 'O', 'R', 'M', '1'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("truncated form file");
  return v;
}

void check_algebra(const LieAlgebra& g, const std::string& id, int dim) {
  if (g.dim() != dim) throw ParseError("form file algebra dimension " + std::to_string(dim) +
                                       " does not match " + std::to_string(g.dim()));
  if (!id.empty() && id != g.id())
    throw ParseError("form file algebra '" + id + "' does not match '" + g.id() + "'");
}

DomainPtr rebuild_domain(int n, double r, double h, double fraction) {
  try {
    return std::make_shared<const GridDomain>(n, r, h, fraction);
  } catch (const DomainError& e) {
    throw ParseError(std::string("form file domain: ") + e.what());
  }
}

void check_node(const GridDomain& dom, std::size_t p, const double* coords) {
  for (int a = 0; a < dom.real_dim(); ++a)
    if (std::abs(coords[a] - dom.coordinate(p, a)) > 1e-9 * std::max(1.0, dom.radius()))
      throw ParseError("form file coordinates do not match the reconstructed grid at node " +
                       std::to_string(p));
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream os(path, mode);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream is(path, mode);
  if (!is) throw ParseError("cannot open " + path.string());
  return is;
}

}  // namespace

void write_gform_binary(const GForm& f, std::ostream& os) {
  const GridDomain& dom = f.domain();
  if (dom.window()) throw DimensionError("cannot serialize a windowed domain");
  os.write(kMagic, sizeof kMagic);
  put<std::int32_t>(os, dom.n());
  put<std::int32_t>(os, f.degree());
  put<double>(os, dom.radius());
  put<double>(os, dom.spacing());
  put<double>(os, dom.subdomain_fraction());
  const std::string& id = f.algebra().id();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(id.size()));
  os.write(id.data(), static_cast<std::streamsize>(id.size()));
  put<std::int32_t>(os, f.dim());
  put<std::int32_t>(os, f.components());
  for (int c = 0; c < f.components(); ++c)
    for (int i : f.multi_index(c)) put<std::int32_t>(os, i);
  put<std::uint64_t>(os, f.nodes());
  for (std::size_t p = 0; p < f.nodes(); ++p) {
    put<std::uint64_t>(os, p);
    for (int a = 0; a < dom.real_dim(); ++a) put<double>(os, dom.coordinate(p, a));
    for (int c = 0; c < f.components(); ++c) {
      const cplx* v = f.at(c, p);
      for (int k = 0; k < f.dim(); ++k) {
        put<double>(os, v[k].real());
        put<double>(os, v[k].imag());
      }
    }
  }
  if (!os) throw Error("write failed");
}

void write_gform_binary(const GForm& f, const std::filesystem::path& path) {
  auto os = open_out(path, std::ios::binary);
  write_gform_binary(f, os);
}

GForm read_gform_binary(std::istream& is, AlgebraPtr algebra) {
  char magic[sizeof kMagic];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw ParseError("not a form file");
  const int n = get<std::int32_t>(is);
  const int q = get<std::int32_t>(is);
  const double r = get<double>(is);
  const double h = get<double>(is);
  const double fraction = get<double>(is);
  const auto len = get<std::uint32_t>(is);
  if (len > 4096) throw ParseError("corrupt algebra id");
  std::string id(len, '\0');
  if (!is.read(id.data(), len)) throw ParseError("truncated form file");
  const int dim = get<std::int32_t>(is);
  const int comps = get<std::int32_t>(is);
  check_algebra(*algebra, id, dim);
  if (n < 1 || n > 2 || q < 0 || q > 2) throw ParseError("invalid form header");
  auto dom = rebuild_domain(n, r, h, fraction);
  GForm f(dom, std::move(algebra), q);
  if (comps != f.components()) throw ParseError("component count mismatch");
  for (int c = 0; c < comps; ++c)
    for (int i : f.multi_index(c))
      if (get<std::int32_t>(is) != i) throw ParseError("component multi-index mismatch");
  if (get<std::uint64_t>(is) != dom->size()) throw ParseError("node count mismatch");
  double coords[4];
  for (std::size_t p = 0; p < f.nodes(); ++p) {
    if (get<std::uint64_t>(is) != p) throw ParseError("node index out of order");
    for (int a = 0; a < dom->real_dim(); ++a) coords[a] = get<double>(is);
    check_node(*dom, p, coords);
    for (int c = 0; c < comps; ++c) {
      cplx* v = f.at(c, p);
      for (int k = 0; k < dim; ++k) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v[k] = {re, im};
      }
    }
  }
  return f;
}

GForm read_gform_binary(const std::filesystem::path& path, AlgebraPtr algebra) {
  auto is = open_in(path, std::ios::binary);
  return read_gform_binary(is, std::move(algebra));
}

void write_gform_csv(const GForm& f, std::ostream& os) {
  const GridDomain& dom = f.domain();
  if (dom.window()) throw DimensionError("cannot serialize a windowed domain");
  os << std::setprecision(17);
  os << "# n=" << dom.n() << "\n# q=" << f.degree() << "\n# r=" << dom.radius()
     << "\n# h=" << dom.spacing() << "\n# subdomain_fraction=" << dom.subdomain_fraction()
     << "\n# algebra=" << f.algebra().id() << "\n# dim=" << f.dim() << "\n# components=";
  for (int c = 0; c < f.components(); ++c) {
    if (c) os << ';';
    for (int i : f.multi_index(c)) os << (i + 1);
  }
  os << "\nnode";
  for (int a = 0; a < dom.real_dim(); ++a) os << ",x" << a;
  for (int c = 0; c < f.components(); ++c)
    for (int k = 0; k < f.dim(); ++k) os << ",c" << c << "_re" << k << ",c" << c << "_im" << k;
  os << '\n';
  for (std::size_t p = 0; p < f.nodes(); ++p) {
    os << p;
    for (int a = 0; a < dom.real_dim(); ++a) os << ',' << dom.coordinate(p, a);
    for (int c = 0; c < f.components(); ++c) {
      const cplx* v = f.at(c, p);
      for (int k = 0; k < f.dim(); ++k) os << ',' << v[k].real() << ',' << v[k].imag();
    }
    os << '\n';
  }
}

void write_gform_csv(const GForm& f, const std::filesystem::path& path) {
  auto os = open_out(path, std::ios::out);
  write_gform_csv(f, os);
}

GForm read_gform_csv(std::istream& is, AlgebraPtr algebra) {
  std::map<std::string, std::string> header;
  std::string line;
  while (is.peek() == '#' && std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    header[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  auto field = [&header](const std::string& key) {
    const auto it = header.find(key);
    if (it == header.end()) throw ParseError("CSV form header lacks '" + key + "'");
    return it->second;
  };
  int n = 0;
  int q = 0;
  int dim = 0;
  double r = 0.0;
  double h = 0.0;
  double fraction = 0.5;
  try {
    n = std::stoi(field("n"));
    q = std::stoi(field("q"));
    dim = std::stoi(field("dim"));
    r = std::stod(field("r"));
    h = std::stod(field("h"));
    if (header.count("subdomain_fraction")) fraction = std::stod(header["subdomain_fraction"]);
  } catch (const std::logic_error&) {
    throw ParseError("malformed CSV form header");
  }
  check_algebra(*algebra, field("algebra"), dim);
  if (n < 1 || n > 2 || q < 0 || q > 2) throw ParseError("invalid form header");
  auto dom = rebuild_domain(n, r, h, fraction);
  GForm f(dom, std::move(algebra), q);
  if (!std::getline(is, line)) throw ParseError("CSV form lacks a column header");
  const int cols = 1 + dom->real_dim() + 2 * dim * f.components();
  std::vector<double> row(static_cast<std::size_t>(cols));
  for (std::size_t p = 0; p < f.nodes(); ++p) {
    if (!std::getline(is, line)) throw ParseError("CSV form truncated");
    std::istringstream ls(line);
    std::string cell;
    for (int k = 0; k < cols; ++k) {
      if (!std::getline(ls, cell, ',')) throw ParseError("CSV row too short");
      try {
        row[static_cast<std::size_t>(k)] = std::stod(cell);
      } catch (const std::logic_error&) {
        throw ParseError("CSV cell is not a number: " + cell);
      }
    }
    if (static_cast<std::size_t>(row[0]) != p) throw ParseError("CSV node index out of order");
    check_node(*dom, p, row.data() + 1);
    const double* v = row.data() + 1 + dom->real_dim();
    for (int c = 0; c < f.components(); ++c)
      for (int k = 0; k < dim; ++k, v += 2) f.at(c, p)[k] = {v[0], v[1]};
  }
  return f;
}

GForm read_gform_csv(const std::filesystem::path& path, AlgebraPtr algebra) {
  auto is = open_in(path, std::ios::in);
  return read_gform_csv(is, std::move(algebra));
}

}  // namespace holoframe
