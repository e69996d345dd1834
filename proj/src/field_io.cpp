#include "qdisp/field_io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qdisp/error.hpp"

namespace qdisp::io {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'D', 'F', 'I', 'E', 'L', 'D', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kOrderTag = 0x01020304u;

std::uint32_t swap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}

  void raw(void* dst, std::size_t bytes) {
    is_.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
    if (!is_) fail(ErrorKind::InvalidArgument, "field file is truncated");
  }

  template <class T>
  T get() {
    T v;
    raw(&v, sizeof(T));
    if (swap_) {
      auto* b = reinterpret_cast<unsigned char*>(&v);
      std::reverse(b, b + sizeof(T));
    }
    return v;
  }

  void set_swap(bool s) { swap_ = s; }

 private:
  std::istream& is_;
  bool swap_ = false;
};

}  // namespace

void write_field(std::ostream& os, const GridField& f) {
  const GridSpec& s = f.spec();
  os.write(kMagic.data(), kMagic.size());
  put(os, kVersion);
  put(os, kOrderTag);
  put(os, static_cast<std::int32_t>(s.dim()));
  put(os, static_cast<std::int32_t>(s.n()));
  for (int a = 0; a < s.dim(); ++a) put(os, s.origin()[a]);
  for (int a = 0; a < s.dim(); ++a) put(os, s.spacing()[a]);
  for (const cplx& z : f.values()) {
    put(os, z.real());
    put(os, z.imag());
  }
  if (!os) fail(ErrorKind::InvalidArgument, "failed to write field");
}

GridField read_field(std::istream& is) {
  Reader r(is);
  std::array<char, 8> magic{};
  r.raw(magic.data(), magic.size());
  require(magic == kMagic, ErrorKind::InvalidArgument, "not a field file (bad magic)");
  std::uint32_t version = 0;
  r.raw(&version, sizeof version);
  std::uint32_t tag = 0;
  r.raw(&tag, sizeof tag);
  if (tag != kOrderTag) {
    require(tag == swap32(kOrderTag), ErrorKind::InvalidArgument,
            "field file has an unknown byte-order tag");
    r.set_swap(true);
    version = swap32(version);
  }
  require(version == kVersion, ErrorKind::InvalidArgument, "unsupported field file version");
  const int d = r.get<std::int32_t>();
  const int n = r.get<std::int32_t>();
  require(d >= 1 && d <= 3, ErrorKind::InvalidArgument, "field file has a bad dimension");
  Vec origin(d);
  Vec spacing(d);
  for (int a = 0; a < d; ++a) origin[a] = r.get<double>();
  for (int a = 0; a < d; ++a) spacing[a] = r.get<double>();
  GridSpec spec(d, n, origin, spacing);
  std::vector<cplx> values(spec.size());
  for (cplx& z : values) {
    const double re = r.get<double>();
    const double im = r.get<double>();
    z = {re, im};
  }
  return GridField(std::move(spec), std::move(values));
}

void save_field(const std::string& path, const GridField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  write_field(os, f);
}

GridField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path);
  return read_field(is);
}

void write_density_slice(std::ostream& os, const GridField& f, int axis, int index) {
  const GridSpec& s = f.spec();
  require(axis >= 0 && axis < s.dim(), ErrorKind::InvalidArgument, "slice axis out of range");
  require(index >= 0 && index < s.n(), ErrorKind::InvalidArgument, "slice index out of range");
  fmt::print(os, "coordinate,density,re,im\n");
  std::size_t stride = 1;
  for (int a = s.dim() - 1; a > axis; --a) stride *= static_cast<std::size_t>(s.n());
  std::size_t base = 0;
  std::size_t step = 1;
  for (int a = s.dim() - 1; a >= 0; --a) {
    if (a != axis) base += static_cast<std::size_t>(index) * step;
    step *= static_cast<std::size_t>(s.n());
  }
  for (int i = 0; i < s.n(); ++i) {
    const cplx z = f.values()[base + static_cast<std::size_t>(i) * stride];
    fmt::print(os, "{:.12g},{:.12g},{:.12g},{:.12g}\n", s.coord(axis, i), std::norm(z), z.real(),
               z.imag());
  }
}

}  // namespace qdisp::io
