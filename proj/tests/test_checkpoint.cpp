#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "opn/checkpoint.hpp"
#include "reference_values.hpp"

using namespace opn;
namespace fs = std::filesystem;

namespace {

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("opn_ckpt_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path path() const { return dir_ / "scan.ckpt"; }

  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(CheckpointFormat, RoundTripAndChecksum) {
  Checkpoint c;
  c.limit = 1000;
  c.segment_size = 100;
  c.completed_frontier = 300;
  c.running_count = 296;
  c.nonsolution_count = 4;
  c.nonsolution_log_bytes = 40;
  const std::string text = serialize(c);
  EXPECT_EQ(parse_checkpoint(text), c);
  EXPECT_EQ(text.rfind("opn-gcd-scan-checkpoint\nschema_version 1\nlimit 1000\n", 0), 0u);

  std::string tampered = text;
  tampered.replace(tampered.find("running_count 296"), 17, "running_count 297");
  EXPECT_THROW(parse_checkpoint(tampered), CheckpointError);
  std::string other_version = text;
  other_version.replace(other_version.find("schema_version 1"), 16, "schema_version 2");
  EXPECT_THROW(parse_checkpoint(other_version), CheckpointError);
  EXPECT_THROW(parse_checkpoint(text.substr(0, text.size() / 2)), CheckpointError);
  EXPECT_THROW(parse_checkpoint("garbage\n"), CheckpointError);
}

TEST(CheckpointFormat, FrontierInvariant) {
  Checkpoint c;
  c.limit = 1000;
  c.segment_size = 100;
  c.completed_frontier = 150;  // not a segment boundary
  c.running_count = 150;
  EXPECT_THROW(parse_checkpoint(serialize(c)), CheckpointError);
  c.completed_frontier = 1000;
  c.running_count = 1000;
  EXPECT_NO_THROW(parse_checkpoint(serialize(c)));
}

TEST_F(CheckpointTest, UninterruptedMatchesPublishedCounts) {
  const ScanSummary s = scan_checkpointed(100'000, 8192, path());
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.solution_count, 93845u);
  EXPECT_EQ(s.solution_count + s.nonsolution_count, 100'000u);
  const Checkpoint c = read_checkpoint(path());
  EXPECT_EQ(c.completed_frontier, 100'000u);
  EXPECT_EQ(c.running_count, 93845u);
}

TEST_F(CheckpointTest, InMemoryRunMatches) {
  const ScanSummary a = scan_checkpointed(50'000, 4096, "");
  const ScanSummary b = scan_checkpointed(50'000, 4096, path());
  EXPECT_EQ(a.solution_count, b.solution_count);
  EXPECT_EQ(a.nonsolutions, b.nonsolutions);
}

TEST_F(CheckpointTest, ResumeAtEveryBoundaryMatchesCleanRun) {
  const std::uint64_t limit = 20'000;
  const std::uint64_t seg = 3000;  // 7 segments, last one partial
  const ScanSummary clean = scan_checkpointed(limit, seg, "");
  for (std::size_t stop = 0; stop <= 7; ++stop) {
    CheckpointOptions first;
    first.max_segments = stop;
    const ScanSummary partial = scan_checkpointed(limit, seg, path(), first);
    EXPECT_EQ(partial.complete, stop >= 7);
    EXPECT_EQ(read_checkpoint(path()).completed_frontier, std::min<std::uint64_t>(limit, stop * seg));
    CheckpointOptions again;
    again.resume = true;
    again.scan.threads = 3;
    const ScanSummary resumed = scan_checkpointed(limit, seg, path(), again);
    ASSERT_TRUE(resumed.complete);
    EXPECT_EQ(resumed.solution_count, clean.solution_count) << stop;
    EXPECT_EQ(resumed.nonsolutions, clean.nonsolutions) << stop;
  }
}

TEST_F(CheckpointTest, PartialLogWriteIsDiscardedOnResume) {
  CheckpointOptions first;
  first.max_segments = 2;
  scan_checkpointed(10'000, 1000, path(), first);
  // A crash between log append and checkpoint write leaves extra log lines.
  std::ofstream(nonsolution_log_path(path()), std::ios::app) << "99999 1 1\n123";
  CheckpointOptions again;
  again.resume = true;
  const ScanSummary s = scan_checkpointed(10'000, 1000, path(), again);
  EXPECT_EQ(s.solution_count, 9561u);
  EXPECT_EQ(s.nonsolutions, scan_checkpointed(10'000, 1000, "").nonsolutions);
}

TEST_F(CheckpointTest, MismatchedOrCorruptCheckpointIsRefused) {
  CheckpointOptions first;
  first.max_segments = 1;
  scan_checkpointed(10'000, 1000, path(), first);
  CheckpointOptions again;
  again.resume = true;
  EXPECT_THROW(scan_checkpointed(20'000, 1000, path(), again), CheckpointError);
  EXPECT_THROW(scan_checkpointed(10'000, 500, path(), again), CheckpointError);

  std::string text = slurp(path());
  text[text.find("completed_frontier") + 19] = '9';
  std::ofstream(path(), std::ios::trunc | std::ios::binary) << text;
  EXPECT_THROW(scan_checkpointed(10'000, 1000, path(), again), CheckpointError);
}

TEST_F(CheckpointTest, MissingLogIsRefused) {
  CheckpointOptions first;
  first.max_segments = 3;
  scan_checkpointed(10'000, 1000, path(), first);
  fs::remove(nonsolution_log_path(path()));
  CheckpointOptions again;
  again.resume = true;
  EXPECT_THROW(scan_checkpointed(10'000, 1000, path(), again), CheckpointError);
}

TEST_F(CheckpointTest, FreshRunOverwritesWithoutResume) {
  CheckpointOptions first;
  first.max_segments = 1;
  scan_checkpointed(10'000, 1000, path(), first);
  const ScanSummary s = scan_checkpointed(5'000, 700, path());
  EXPECT_EQ(s.solution_count + s.nonsolution_count, 5'000u);
  EXPECT_EQ(read_checkpoint(path()).segment_size, 700u);
}

TEST_F(CheckpointTest, UnwritableLocationIsACheckpointError) {
  EXPECT_THROW(scan_checkpointed(1000, 100, dir_ / "missing" / "x.ckpt"), CheckpointError);
}
