#pragma once

#include <functional>
#include <string>
#include <vector>

namespace efimov {

using WarningSink = std::function<void(const std::string&)>;

/// Routes a non-fatal diagnostic. The default sink prints to stderr.
void warn(const std::string& message);

/// Installs a sink and returns the previous one.
WarningSink set_warning_sink(WarningSink sink);

/// Collects warnings for the lifetime of the object (tests, verify reports).
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool contains(const std::string& fragment) const;

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace efimov
