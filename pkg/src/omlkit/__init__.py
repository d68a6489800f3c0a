"""Exhaustive checkers for finite quantum-logic structures."""
from .errors import (
    BudgetExceeded,
    DomainMismatch,
    HostMismatch,
    InvNotInvolutive,
    NoMeet,
    NotAPoset,
    NotAssociative,
    NotGalois,
    NotOrthomodular,
    NoUnit,
    OmlkitError,
    OrthoViolation,
    ParseError,
    SaiUnderivable,
    UnknownCorpusName,
    UnknownElement,
)
from .report import Check, Report
from .oml import Oml, build_lattice, corpus, downset, find_iso, two
from .galois import (
    GalMor,
    biproduct,
    compose,
    dagger,
    enumerate_hom,
    from_lower,
    galmor,
    identity,
    point,
    zero_mor,
)
from .kernels import KernelSub, cokernel, factorize, kernel
from .foulis import Fsg, build_fsg, check_foulis, check_foulis_alt, end_foulis, make_fsg
from .category import DaggerKernelCategory, ksub_functor, ksub_lattice
from .dkc import FinRel, OMLatGal
from .karoubi import GenericKaroubi, KarMor, KarObj, KaroubiFsg, k_lattice, roundtrip

__version__ = "0.1.0"
