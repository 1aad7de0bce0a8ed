#pragma once

#include "maxtree/kernels.hpp"

namespace maxtree::kernels {

#if defined(MAXTREE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

#if defined(MAXTREE_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace maxtree::kernels
