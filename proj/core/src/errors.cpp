#include "couette/errors.hpp"

#include <sstream>

namespace couette {

namespace {
std::string with_time(const std::string& what, double time) {
  std::ostringstream os;
  os.precision(10);
  os << what << " (t = " << time << ")";
  return os.str();
}
}  // namespace

TimedError::TimedError(const std::string& what, double time)
    : std::runtime_error(with_time(what, time)), time_(time) {}

}  // namespace couette
