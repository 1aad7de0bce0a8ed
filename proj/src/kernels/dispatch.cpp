#include <cstdlib>
#include <string_view>

#include "maxtree/kernels.hpp"
#include "variants.hpp"

namespace maxtree::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(MAXTREE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select_table() {
  const auto tables = available_tables();
  if (const char* forced = std::getenv("MAXTREE_KERNELS")) {
    for (const KernelTable* t : tables) {
      if (t->name == std::string_view(forced)) return *t;
    }
  }
  // Widest available variant wins.
  return *tables.back();
}

}  // namespace

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> tables{&scalar_table()};
#if defined(MAXTREE_HAVE_AVX2)
  if (cpu_has_avx2()) tables.push_back(&avx2_table());
#endif
#if defined(MAXTREE_HAVE_NEON)
  tables.push_back(&neon_table());
#endif
  return tables;
}

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

}  // namespace maxtree::kernels
