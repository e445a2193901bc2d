#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/dissimilarity_matrix.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/io.hpp"

namespace fs = std::filesystem;
using namespace fieldscope;

TEST(Delimited, DoubleTextRoundTripsExactly) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(delimited::parse_double(delimited::format_double(v)), v);
  }
  EXPECT_EQ(delimited::format_double(0.5), "0.5");
}

TEST(Delimited, RejectsTrailingGarbage) {
  EXPECT_THROW(delimited::parse_double("0.5x"), Error);
  EXPECT_THROW(delimited::parse_integer("12a"), Error);
  EXPECT_EQ(delimited::parse_integer(" 42 "), 42);
}

TEST(Delimited, CsvQuoting) {
  const std::vector<std::string> fields{"plain", "with,comma", "say \"hi\"", ""};
  const auto line = delimited::join_csv(fields);
  EXPECT_EQ(line, "plain,\"with,comma\",\"say \"\"hi\"\"\",");
  EXPECT_EQ(delimited::split_csv(line), fields);
}

TEST(Delimited, CommentsAndCarriageReturns) {
  EXPECT_TRUE(delimited::is_comment_or_blank("   # note"));
  EXPECT_TRUE(delimited::is_comment_or_blank("  "));
  EXPECT_FALSE(delimited::is_comment_or_blank("a # b"));
  std::istringstream in("a\r\nb\n");
  std::string line;
  ASSERT_TRUE(delimited::read_line(in, line));
  EXPECT_EQ(line, "a");
}

TEST(Io, Sha256KnownDigest) {
  EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, AtomicWriteAndMissingFile) {
  const auto path = fs::temp_directory_path() / "fieldscope_io_test.txt";
  io::write_atomic(path, "hello\n");
  EXPECT_EQ(io::read_file(path), "hello\n");
  fs::remove(path);
  try {
    io::read_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::input_not_found);
  }
}

TEST(Matrix, CsvRoundTripKeepsValuesAndErrors) {
  DissimilarityMatrix m({"a", "b,c", "d"});
  m.set(0, 1, 0.1 + 0.2);
  m.set(0, 2, 1.0 / 3.0);
  m.set_error(1, 2, "degenerate");
  EXPECT_TRUE(std::isnan(m(2, 1)));
  std::stringstream s;
  write_matrix_csv(s, m);
  const auto back = read_matrix_csv(s);
  EXPECT_TRUE(back.same_values(m));
  EXPECT_EQ(back.errors().size(), 1u);
}

TEST(Matrix, RejectsAsymmetricInput) {
  std::istringstream in("field,a,b\na,0,0.5\nb,0.4,0\n");
  EXPECT_THROW(read_matrix_csv(in), Error);
}
