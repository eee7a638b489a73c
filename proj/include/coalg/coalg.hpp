#ifndef COALG_COALG_HPP
#define COALG_COALG_HPP

#include "coalg/bisim.hpp"
#include "coalg/compare.hpp"
#include "coalg/corpus.hpp"
#include "coalg/errors.hpp"
#include "coalg/felem.hpp"
#include "coalg/finset.hpp"
#include "coalg/functor.hpp"
#include "coalg/lts.hpp"
#include "coalg/props.hpp"
#include "coalg/report.hpp"
#include "coalg/system_file.hpp"
#include "coalg/terminal.hpp"
#include "coalg/text.hpp"

#endif
