#include "diffwave/error.hpp"

#include <sstream>

namespace diffwave {

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

namespace {
std::string blowup_message(double time, const std::string& what) {
  std::ostringstream os;
  os << "blow-up at t = " << time << ": " << what;
  return os.str();
}
}  // namespace

BlowupError::BlowupError(double time, const std::string& what)
    : Error(ErrorKind::kBlowup, blowup_message(time, what)), time_(time) {}

}  // namespace diffwave
