#pragma once

#include "xduce/error.hpp"
#include "xduce/symbol.hpp"
#include "xduce/core.hpp"
#include "xduce/monoid.hpp"
#include "xduce/sst.hpp"
#include "xduce/hdt0l.hpp"
#include "xduce/cfpt.hpp"
#include "xduce/cfp.hpp"
#include "xduce/analysis.hpp"
#include "xduce/sequences.hpp"
#include "xduce/io.hpp"
#include "xduce/corpus.hpp"
