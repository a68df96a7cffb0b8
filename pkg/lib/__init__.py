from .errors import *
from .staircase import *
from .linalg import *
from .trunc_algebra import *
from .dechargeable import *
from .definitions import *
from .geometry import *
from .horace_engine import *
from .oracle import *
from .spec_parser import *
from .presets import *
from .selftest import *
from .commands import *
from .log_formatter import *
