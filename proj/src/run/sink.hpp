#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "core/fwindow.hpp"

namespace fws {

class Sink {
 public:
  virtual ~Sink() = default;
  virtual void consume(const FWindow& w) = 0;
};

// Writes "sync,duration,v0[,v1]" rows with %.9g floats. Formatting goes
// through a stack buffer so steady-state consumption does not allocate.
class CsvSink : public Sink {
 public:
  explicit CsvSink(const std::string& path);
  explicit CsvSink(FILE* f) : f_(f) {}
  ~CsvSink() override;
  void consume(const FWindow& w) override;
  std::int64_t events() const { return events_; }

 private:
  FILE* f_ = nullptr;
  bool owned_ = false;
  std::int64_t events_ = 0;
};

// Collects events in memory (tests).
class VectorSink : public Sink {
 public:
  void consume(const FWindow& w) override;
  std::vector<Event> events;
};

// Counts events and folds payload bytes into an FNV-1a checksum; never
// allocates.
class ChecksumSink : public Sink {
 public:
  void consume(const FWindow& w) override;
  std::int64_t events() const { return events_; }
  std::uint64_t checksum() const { return hash_; }

 private:
  std::int64_t events_ = 0;
  std::uint64_t hash_ = 1469598103934665603ull;
};

}  // namespace fws
