#include "darcais/cache.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace darcais {
namespace {

namespace fs = std::filesystem;

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("darcais-cache-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    path_ = (dir_ / "cache.txt").string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write_raw(const std::string& text) {
    std::ofstream out(path_);
    out << text;
  }

  fs::path dir_;
  std::string path_;
};

TEST_F(CacheTest, MissingFileIsEmpty) { EXPECT_TRUE(read_cache(path_).empty()); }

TEST_F(CacheTest, FormatsSmallRecords) {
  DArcaisTable t;
  extend_cache(path_, t, 3, 0);
  std::ifstream in(path_);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all, "DARCAIS-CACHE v1\n1: 1\n2: 3 1\n3: 8 9 1\n");
}

TEST_F(CacheTest, RoundTripTwoHundred) {
  DArcaisTable t;
  extend_cache(path_, t, 200, 0);
  DArcaisTable loaded;
  EXPECT_EQ(load_cache_into(path_, loaded), 200U);
  EXPECT_EQ(loaded.computed(), 200U);
  for (unsigned n = 1; n <= 200; ++n) {
    ASSERT_EQ(loaded.record(n), t.record(n)) << n;
    ASSERT_EQ(loaded.poly(n), t.poly(n)) << n;
  }
  EXPECT_EQ(loaded.record(201), t.record(201));
}

TEST_F(CacheTest, ExtendKeepsExistingPrefix) {
  DArcaisTable t;
  extend_cache(path_, t, 5, 0);
  DArcaisTable u;
  unsigned have = load_cache_into(path_, u);
  extend_cache(path_, u, 9, have);
  auto recs = read_cache(path_);
  ASSERT_EQ(recs.size(), 9U);
  EXPECT_EQ(recs[8], t.record(9));
}

TEST_F(CacheTest, BadHeaderRefused) {
  write_raw("DARCAIS-CACHE v2\n1: 1\n");
  try {
    read_cache(path_);
    FAIL() << "expected CacheError";
  } catch (const CacheError& e) {
    EXPECT_NE(std::string(e.what()).find(":1:"), std::string::npos);
  }
}

TEST_F(CacheTest, CorruptRecordsRefused) {
  const char* bodies[] = {
      "1: 1\n2: 3 2\n",      // leading coefficient not 1
      "1: 1\n3: 8 9 1\n",    // gap
      "1: 1\n2 3 1\n",       // no separator
      "1: 1\n2: 3 x\n",      // not an integer
      "1: 1\n2: 3\n",        // wrong length
      "0:\n",                // index 0
  };
  for (const char* body : bodies) {
    write_raw(std::string(kCacheHeader) + "\n" + body);
    EXPECT_THROW(read_cache(path_), CacheError) << body;
  }
}

TEST_F(CacheTest, LoadedValuesAreTrustedOnlyAfterValidation) {
  write_raw(std::string(kCacheHeader) + "\n1: 1\n2: 3 1\n3: 8 9 1\n");
  DArcaisTable t;
  EXPECT_EQ(load_cache_into(path_, t), 3U);
  EXPECT_EQ(t.record(4), shared_table().record(4));
}

}  // namespace
}  // namespace darcais
