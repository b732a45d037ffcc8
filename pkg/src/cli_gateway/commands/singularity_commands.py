"""sing and hj: the cyclic quotient calculator."""
from argparse import Namespace

from cli_gateway.core.status import EXIT_OK
from services.errors import OutOfRange
from services.rationals import parse_rational
from services.singularities import service
from services.singularities.models import CyclicQuotientType, ResolutionChain
from services.singularities.schemas import ChainReport


def cmd_sing(args: Namespace) -> int:
    t = CyclicQuotientType(args.d * args.m, args.d * args.k, args.d)
    report = service.singularity_report(t, parse_rational(args.b))
    print(report.model_dump_json(indent=2))
    return EXIT_OK


def cmd_hj(args: Namespace) -> int:
    if args.chain:
        chain = ResolutionChain(tuple(args.chain))
    elif args.m is not None and args.k is not None:
        chain = service.hj_expand(args.m, args.k)
    else:
        raise OutOfRange("hj needs either m and k or --chain")
    m, k = service.hj_contract(chain)
    report = ChainReport(chain=list(chain.weights), m=m, k=k, reversed_k=service.reversed_type(m, k)[1])
    print(report.model_dump_json(indent=2))
    return EXIT_OK
