// Writes one of the synthetic test clips as a directory of PNG frames.
#include <cstdio>
#include <string>

#include "fixtures.hpp"
#include "vtex/error.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s pendulum|periodic|flag|demo <dir>\n", argv[0]);
    return 1;
  }
  const std::string kind = argv[1];
  try {
    if (kind == "pendulum") fixtures::write_png_dir(fixtures::pendulum(), argv[2]);
    else if (kind == "periodic") fixtures::write_png_dir(fixtures::periodic(), argv[2]);
    else if (kind == "flag") fixtures::write_png_dir(fixtures::flag(), argv[2]);
    else if (kind == "demo") fixtures::write_png_dir(fixtures::demo_clip(), argv[2]);
    else {
      std::fprintf(stderr, "unknown fixture '%s'\n", kind.c_str());
      return 1;
    }
  } catch (const vtex::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return static_cast<int>(e.code());
  }
  return 0;
}
