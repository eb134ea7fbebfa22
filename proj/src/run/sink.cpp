#include "run/sink.hpp"

namespace fws {

CsvSink::CsvSink(const std::string& path) : owned_(true) {
  f_ = std::fopen(path.c_str(), "w");
  if (!f_) fail(Status::Usage, "cannot open output file: " + path);
}

CsvSink::~CsvSink() {
  if (owned_ && f_) std::fclose(f_);
}

void CsvSink::consume(const FWindow& w) {
  char buf[160];
  const int lanes = w.lanes();
  for (std::int64_t i = 0; i < w.capacity(); ++i) {
    if (!w.present(i)) continue;
    int n;
    if (lanes == 1) {
      n = std::snprintf(buf, sizeof buf, "%lld,%lld,%.9g\n",
                        static_cast<long long>(w.vsync(i)),
                        static_cast<long long>(w.duration(i)),
                        static_cast<double>(w.payload(i)[0]));
    } else {
      n = std::snprintf(buf, sizeof buf, "%lld,%lld,%.9g,%.9g\n",
                        static_cast<long long>(w.vsync(i)),
                        static_cast<long long>(w.duration(i)),
                        static_cast<double>(w.payload(i)[0]),
                        static_cast<double>(w.payload(i)[1]));
    }
    std::fwrite(buf, 1, static_cast<size_t>(n), f_);
    ++events_;
  }
}

void VectorSink::consume(const FWindow& w) {
  for (std::int64_t i = 0; i < w.capacity(); ++i)
    if (w.present(i)) events.push_back(w.event(i));
}

void ChecksumSink::consume(const FWindow& w) {
  auto mix = [&](const void* p, size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      hash_ ^= b[i];
      hash_ *= 1099511628211ull;
    }
  };
  const int lanes = w.lanes();
  for (std::int64_t i = 0; i < w.capacity(); ++i) {
    if (!w.present(i)) continue;
    TimeMs vs = w.vsync(i);
    std::int64_t d = w.duration(i);
    mix(&vs, sizeof vs);
    mix(&d, sizeof d);
    mix(w.payload(i), sizeof(float) * static_cast<size_t>(lanes));
    ++events_;
  }
}

}  // namespace fws
