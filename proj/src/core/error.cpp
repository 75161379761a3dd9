#include "error.hpp"

#include <atomic>
#include <iostream>

namespace levymult {
namespace {

void stderr_sink(std::string_view message) {
  std::cerr << "levymult warning: " << message << '\n';
}

std::atomic<WarningSink> g_sink{&stderr_sink};

}  // namespace

void set_warning_sink(WarningSink sink) { g_sink.store(sink ? sink : &stderr_sink); }

void warn(std::string_view message) { g_sink.load()(message); }

}  // namespace levymult
