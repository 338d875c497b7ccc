#include <span>

#include "travelkit/cli/dispatch.hpp"

int main(int argc, char** argv) {
  return travelkit::cli::dispatch(std::span<char*>(argv, static_cast<std::size_t>(argc)));
}
