#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "holoframe/gform_io.hpp"

using namespace holoframe;
using namespace holoframe::testing;

namespace {

GForm awkward(const DomainPtr& dom, const AlgebraPtr& g, int q) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GForm f(dom, g, q);
  for (auto& v : f.data()) v = cplx(u(rng) / 3.0, std::ldexp(u(rng), -40));
  return f;
}

bool bit_equal(const GForm& a, const GForm& b) {
  return a.data().size() == b.data().size() &&
         std::memcmp(a.data().data(), b.data().data(), a.data().size_bytes()) == 0;
}

TEST(BinaryIo, BitExactRoundTrip) {
  for (const auto& dom : {disc(1.0 / 8.0), polydisc(0.25, 0.75)}) {
    const auto g = algebra("sl2C");
    for (int q = 0; q <= dom->n(); ++q) {
      const GForm f = awkward(dom, g, q);
      std::stringstream ss;
      write_gform_binary(f, ss);
      const GForm back = read_gform_binary(ss, g);
      EXPECT_TRUE(bit_equal(f, back));
      EXPECT_TRUE(back.domain().same_geometry(f.domain()));
      EXPECT_EQ(back.degree(), q);
    }
  }
}

TEST(BinaryIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "holoframe_io_test.bin";
  const auto g = algebra("heisenberg3");
  const GForm f = awkward(disc(0.125), g, 1);
  write_gform_binary(f, path);
  EXPECT_TRUE(bit_equal(f, read_gform_binary(path, g)));
  std::filesystem::remove(path);
}

TEST(BinaryIo, RejectsMismatchAndGarbage) {
  const GForm f = awkward(disc(0.25), algebra("heisenberg3"), 0);
  std::stringstream ss;
  write_gform_binary(f, ss);
  const std::string bytes = ss.str();
  {
    std::stringstream in(bytes);
    EXPECT_THROW((void)read_gform_binary(in, algebra("sl2C")), ParseError);
  }
  {
    std::stringstream in(bytes.substr(0, bytes.size() / 2));
    EXPECT_THROW((void)read_gform_binary(in, algebra("heisenberg3")), ParseError);
  }
  {
    std::stringstream in("not a form");
    EXPECT_THROW((void)read_gform_binary(in, algebra("heisenberg3")), ParseError);
  }
}

TEST(CsvIo, RoundTrip) {
  const auto g = algebra("sl2C");
  const GForm f = awkward(polydisc(0.125, 0.5), g, 1);
  std::stringstream ss;
  write_gform_csv(f, ss);
  EXPECT_EQ(ss.str().rfind("# ", 0), 0u);
  const GForm back = read_gform_csv(ss, g);
  EXPECT_TRUE(bit_equal(f, back));
}

}  // namespace
