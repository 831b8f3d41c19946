#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace ltesim {

// Optional per-phase debug log.  One CSV row per event; -1 marks a field that
// does not apply to the phase.
class TraceWriter {
 public:
  TraceWriter() = default;

  explicit TraceWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open trace file '" + path + "'");
    out_ << "tti,phase,user,prb,v1,v2,v3\n";
  }

  bool enabled() const { return out_.is_open(); }

  void row(long long tti, const char* phase, int user, int prb, double v1,
           double v2, double v3) {
    if (!out_.is_open()) return;
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%lld,%s,%d,%d,%.9g,%.9g,%.9g\n", tti, phase,
                  user, prb, v1, v2, v3);
    out_ << buf;
  }

  void flush() {
    if (out_.is_open()) out_.flush();
  }

 private:
  std::ofstream out_;
};

}  // namespace ltesim
