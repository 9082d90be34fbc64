#pragma once

#include "iwg/arith.hpp"
#include "iwg/coleman.hpp"
#include "iwg/cyclotomic.hpp"
#include "iwg/dvr.hpp"
#include "iwg/formal_group.hpp"
#include "iwg/group_law.hpp"
#include "iwg/growth.hpp"
#include "iwg/iwasawa.hpp"
#include "iwg/kobayashi.hpp"
#include "iwg/local_points.hpp"
#include "iwg/matrix.hpp"
#include "iwg/poly.hpp"
#include "iwg/smith.hpp"
