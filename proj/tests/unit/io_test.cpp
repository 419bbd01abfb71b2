#include <gtest/gtest.h>

#include <sstream>

#include "phasemac/errors.hpp"
#include "phasemac/key_value.hpp"
#include "phasemac/model_io.hpp"
#include "phasemac/window_csv.hpp"

namespace nn = phasemac::nn;

namespace {

std::string saved(const nn::FcModel& m) {
  std::ostringstream os;
  nn::save_model(m, os);
  return os.str();
}

std::uint64_t load_error_offset(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    nn::load_model(in);
  } catch (const phasemac::FormatError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "load succeeded";
  return 0;
}

}  // namespace

TEST(ModelIo, RoundTrip) {
  const auto m = nn::FcModel::random(std::vector<std::size_t>{7, 5, 3}, 9);
  const auto bytes = saved(m);
  EXPECT_EQ(bytes.size(), 4 + 4 + 4 + 3 * 4 + 2 + 4 * (7 * 5 + 5 + 5 * 3 + 3));
  EXPECT_EQ(bytes.substr(0, 4), "PHFC");
  std::istringstream in(bytes);
  EXPECT_EQ(nn::load_model(in), m);
}

TEST(ModelIo, HeaderIsLittleEndian) {
  const auto bytes = saved(nn::FcModel::random(std::vector<std::size_t>{258, 1}, 1));
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);  // version
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1);  // layer count
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 2);  // 258 = 0x0102
  EXPECT_EQ(static_cast<unsigned char>(bytes[13]), 1);
}

TEST(ModelIo, CorruptionReportsOffset) {
  const auto good = saved(nn::FcModel::random(std::vector<std::size_t>{3, 2}, 1));
  auto bad_magic = good;
  bad_magic[2] = 'X';
  EXPECT_EQ(load_error_offset(bad_magic), 2u);
  auto bad_version = good;
  bad_version[4] = 9;
  EXPECT_EQ(load_error_offset(bad_version), 4u);
  auto bad_activation = good;
  bad_activation[20] = 7;
  EXPECT_EQ(load_error_offset(bad_activation), 20u);
  EXPECT_EQ(load_error_offset(good.substr(0, good.size() - 3)), good.size() - 3);
  EXPECT_EQ(load_error_offset(good + "x"), good.size());
}

TEST(WindowCsv, RoundTripIsExact) {
  const std::vector<std::vector<float>> w{{0.1f, -2.5e-8f, 3.0f}, {1e30f, -0.0f, 7.125f}};
  std::ostringstream os;
  nn::write_windows_csv(os, w);
  std::istringstream in("# comment\n" + os.str());
  EXPECT_EQ(nn::read_windows_csv(in), w);
}

TEST(WindowCsv, RaggedRowReportsLine) {
  std::istringstream in("1,2,3\n4,5\n");
  try {
    nn::read_windows_csv(in);
    FAIL();
  } catch (const phasemac::FormatError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  std::istringstream bad("1,2\n3,abc\n");
  EXPECT_THROW(nn::read_windows_csv(bad), phasemac::FormatError);
}

TEST(KeyValue, ParsesAndTrims) {
  std::istringstream in("# header\n\n  seed = 5 \nbits=8,4\n");
  const auto kv = phasemac::parse_key_values(in);
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].key, "seed");
  EXPECT_EQ(kv[0].value, "5");
  EXPECT_EQ(kv[0].line, 3);
  EXPECT_EQ(kv[1].value, "8,4");
}

TEST(KeyValue, MissingEqualsReportsLine) {
  std::istringstream in("a = 1\nnonsense\n");
  try {
    phasemac::parse_key_values(in);
    FAIL();
  } catch (const phasemac::FormatError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(KeyValue, NumberParsing) {
  EXPECT_EQ(phasemac::parse_double("2.5e-3", "x"), 2.5e-3);
  EXPECT_EQ(phasemac::parse_int("-42", "x"), -42);
  EXPECT_THROW(phasemac::parse_int("4x", "x"), phasemac::Error);
  EXPECT_THROW(phasemac::parse_double("", "x"), phasemac::Error);
}
