#include "core/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>

#include "core/errors.hpp"

namespace rwlab {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

class Writer {
public:
  Writer(const std::string& path) : path_(path), f_(std::fopen(path.c_str(), "wb")) {
    if (!f_) io_error("cannot open for writing: " + path);
  }
  void bytes(const void* p, std::size_t n) {
    if (std::fwrite(p, 1, n, f_.get()) != n) io_error("write failure: " + path_);
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b, 8);
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

private:
  std::string path_;
  FilePtr f_;
};

class Reader {
public:
  Reader(const std::string& path) : path_(path), f_(std::fopen(path.c_str(), "rb")) {
    if (!f_) io_error("cannot open for reading: " + path);
  }
  void bytes(void* p, std::size_t n) {
    if (std::fread(p, 1, n, f_.get()) != n) io_error("truncated snapshot: " + path_);
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint8_t b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint8_t b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  const std::string& path() const { return path_; }

private:
  std::string path_;
  FilePtr f_;
};

void write_header(Writer& w, const char magic[5], std::uint8_t kind, double theta,
                  std::uint32_t n0, std::uint64_t seed, const BoxSpec& box) {
  w.bytes(magic, 5);
  w.u8(kind);
  w.f64(theta);
  w.u32(n0);
  w.u64(seed);
  w.i64(box.origin.x);
  w.i64(box.origin.y);
  w.u64(box.width);
  w.u64(box.height);
  w.u64(box.margin);
}

void read_header(Reader& r, const char magic[5], std::uint8_t& kind, double& theta,
                 std::uint32_t& n0, std::uint64_t& seed, BoxSpec& box) {
  char got[5];
  r.bytes(got, 5);
  if (std::memcmp(got, magic, 5) != 0) io_error("bad snapshot magic in " + r.path());
  kind = r.u8();
  theta = r.f64();
  n0 = r.u32();
  seed = r.u64();
  box.origin.x = r.i64();
  box.origin.y = r.i64();
  box.width = r.u64();
  box.height = r.u64();
  box.margin = r.u64();
  if (box.width < 1 || box.height < 1 || box.width * box.height > (1ull << 32)) {
    io_error("implausible box in snapshot " + r.path());
  }
}

}  // namespace

void write_env_snapshot(const std::string& path, const IntensityParams& params,
                        const HeightField& heights, const AncestralField& ancestral) {
  Writer w(path);
  write_header(w, "UMBR1", static_cast<std::uint8_t>(params.model), params.theta, params.n0,
               params.seed, heights.box);
  for (const std::uint32_t v : heights.h) w.u32(v);
  w.bytes(ancestral.dir.data(), ancestral.dir.size());
  w.bytes(heights.exact.data(), heights.exact.size());
}

EnvSnapshot read_env_snapshot(const std::string& path) {
  Reader r(path);
  EnvSnapshot s;
  read_header(r, "UMBR1", s.kind, s.theta, s.n0, s.seed, s.box);
  const std::size_t n = static_cast<std::size_t>(s.box.cells());
  s.heights.box = s.box;
  s.ancestral.box = s.box;
  s.heights.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.heights.h[i] = r.u32();
  s.ancestral.dir.resize(n);
  r.bytes(s.ancestral.dir.data(), n);
  s.heights.exact.resize(n);
  r.bytes(s.heights.exact.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.ancestral.dir[i] != 1 && s.ancestral.dir[i] != 2) {
      io_error("corrupt direction payload in " + path);
    }
  }
  return s;
}

void write_cond_snapshot(const std::string& path, std::uint8_t kind, double theta,
                         std::uint32_t n0, std::uint64_t seed, const ConductanceField& field) {
  Writer w(path);
  write_header(w, "COND1", kind, theta, n0, seed, field.box);
  for (const double v : field.logw_h) w.f64(v);
  for (const double v : field.logw_v) w.f64(v);
}

CondSnapshot read_cond_snapshot(const std::string& path) {
  Reader r(path);
  CondSnapshot s;
  read_header(r, "COND1", s.kind, s.theta, s.n0, s.seed, s.field.box);
  const std::uint64_t w = s.field.box.width;
  const std::uint64_t h = s.field.box.height;
  s.field.logw_h.resize((w - 1) * h);
  s.field.logw_v.resize(w * (h - 1));
  for (double& v : s.field.logw_h) v = r.f64();
  for (double& v : s.field.logw_v) v = r.f64();
  return s;
}

}  // namespace rwlab
