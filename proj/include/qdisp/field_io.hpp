#pragma once

#include <iosfwd>
#include <string>

#include "qdisp/grid.hpp"

namespace qdisp::io {

/// Binary field container:
///   8 bytes  magic "QDFIELD\0"
///   uint32   version (1)
///   uint32   byte-order tag 0x01020304 in the writer's native order
///   int32    d, int32 n
///   float64  origin[d], spacing[d]
///   float64  re, im interleaved for n^d points (row-major, last axis fastest)
/// Files written on a machine of the other byte order are swapped on read.
void write_field(std::ostream& os, const GridField& f);
GridField read_field(std::istream& is);

void save_field(const std::string& path, const GridField& f);
GridField load_field(const std::string& path);

/// CSV of |psi|^2 along `axis` with the other axes fixed at `index`
/// (columns: coordinate, density, re, im).
void write_density_slice(std::ostream& os, const GridField& f, int axis, int index);

}  // namespace qdisp::io
