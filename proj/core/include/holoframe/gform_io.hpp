#pragma once

#include <filesystem>
#include <iosfwd>

#include "holoframe/gform.hpp"

namespace holoframe {

/// Columnar binary format: a header (magic, n, q, r, h, subdomain fraction,
/// algebra id, dim, component multi-indices, node count) followed by one
/// record per node: index, 2n coordinates, then 2*dim doubles (re, im) per
/// component. Values are written as raw IEEE doubles, so a round trip is
/// bit-exact.
void write_gform_binary(const GForm& f, std::ostream& os);
void write_gform_binary(const GForm& f, const std::filesystem::path& path);

/// Rebuilds the domain from the header and checks it against the stored
/// coordinates. The algebra must match the stored id and dimension.
GForm read_gform_binary(std::istream& is, AlgebraPtr algebra);
GForm read_gform_binary(const std::filesystem::path& path, AlgebraPtr algebra);

/// CSV with commented header lines (`# key=value`) and one row per node.
void write_gform_csv(const GForm& f, std::ostream& os);
void write_gform_csv(const GForm& f, const std::filesystem::path& path);
GForm read_gform_csv(std::istream& is, AlgebraPtr algebra);
GForm read_gform_csv(const std::filesystem::path& path, AlgebraPtr algebra);

}  // namespace holoframe
