#pragma once

#include <cstdlib>
#include <string>

#include <unistd.h>

namespace testutil {

/// Unique writable path under /tmp; the file exists (empty) on return.
inline std::string temp_path() {
  char name[] = "/tmp/loracov_test_XXXXXX";
  const int fd = ::mkstemp(name);
  if (fd >= 0) ::close(fd);
  return name;
}

}  // namespace testutil
