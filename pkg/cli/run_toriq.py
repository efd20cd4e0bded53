import argparse
import logging
import sys
from pathlib import Path

# --- Project Imports ---
from cli.corpus import resolve_fan
from cli.fan_document import FanDocument
from cli.reports import QuotientRecord, Report, ReportWriter
from config.errors import ErrorCode, ToriqError
from config.settings import (
    EXIT_CERTIFICATE,
    EXIT_OK,
    EXIT_VALIDATION,
    LOG_DATE_FORMAT,
    LOG_FORMAT,
    RESULTS_DIR,
)
from cox_quotient import build_quotient, check_enough_cartier, codim_check, hat_fan, irrelevant_ideal
from fan_model import validate_fan
from graded_spec import global_sections, twisted_sections_on_chart, verify_all
from support_fn import PicClass, compare_with_cox, compute_SF

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "analyze", "quotient", "sections", "verify")


def parse_degree(text: str) -> PicClass:
    """Parses '2' or '1,1' into a Pic class."""
    try:
        return PicClass(tuple(int(part) for part in text.split(",") if part.strip() != ""))
    except ValueError:
        raise ToriqError(ErrorCode.PARSE_ERROR, f"Degree '{text}' must be comma-separated integers.")


class ToriqPipeline:
    """
    Runs one command on one fan: validation, support functions, the quotient
    presentation, sections or the certificate suite. Every stage adds a
    section to the report.
    """

    def __init__(self, document: FanDocument, full_irrelevant: bool = False):
        self.document = document
        self.full_irrelevant = full_irrelevant
        self.fan = None
        self.lattice = None
        self.qp = None

    # --- Stages ---

    def _validate(self, report: Report) -> bool:
        self.fan = self.document.to_fan()
        validation = validate_fan(self.fan)
        report.sections["validation"] = validation.to_dict()
        if validation.violations:
            logger.info(f"\n{validation.to_frame().to_string(index=False)}")
        if not validation.valid:
            first = validation.errors[0]
            report.status = "error"
            report.error = {"code": first.kind.value, "message": first.message, "details": {}}
            report.exit_code = EXIT_VALIDATION
        return validation.valid

    def _analyze(self, report: Report):
        self.lattice = compute_SF(self.fan)
        t_hat, t, g = self.lattice.quotient_group_data()
        enough = check_enough_cartier(self.lattice)
        comparison = compare_with_cox(self.lattice)
        logger.info(f"\n{enough.to_frame().to_string(index=False)}")
        report.sections["analysis"] = {
            "sf_rank": t_hat,
            "lattice_rank": t,
            "pic_rank": g,
            "torsion": list(self.lattice.pic.torsion_invariants),
            "ray_value_index": comparison.index,
            "cox_isomorphism": comparison.is_isomorphism,
            "enough_cartier": [row.to_dict() for row in enough.rows],
            "enough_cartier_passed": enough.passed,
        }

    def _quotient(self, report: Report):
        self.qp = build_quotient(self.lattice)
        lifted = hat_fan(self.qp)
        ideal = irrelevant_ideal(self.qp, full=self.full_irrelevant)
        codim = codim_check(self.qp, ideal)
        section = QuotientRecord.from_presentation(self.qp, ideal, codim).to_dict()
        section["hat_fan_certificates"] = dict(sorted(lifted.certificates.items()))
        report.sections["quotient"] = section

    def _sections(self, report: Report, degree: PicClass):
        sections = global_sections(self.qp, degree)
        charts = [twisted_sections_on_chart(self.qp, degree, key, sections=sections) for key in self.fan.maximal_keys]
        report.sections["sections"] = sections.to_dict()
        report.sections["charts"] = [c.to_dict() for c in charts]
        logger.info(
            f"Degree {list(degree.coordinates)}: "
            f"{'infinite' if sections.is_infinite else len(sections)} sections, {len(charts)} charts."
        )

    def _verify(self, report: Report):
        suite = verify_all(self.qp)
        logger.info(f"\n{suite.summary().to_string(index=False)}")
        report.sections["verification"] = {
            "passed": suite.passed,
            "summary": suite.summary().to_dict(orient="records"),
            "failures": [vars(r) for r in suite.failures],
        }
        if not suite.passed:
            report.status = "error"
            report.error = {
                "code": ErrorCode.CERTIFICATE_FAILURE.value,
                "message": f"{len(suite.failures)} certificates failed.",
                "details": {},
            }
            report.exit_code = EXIT_CERTIFICATE

    # --- Commands ---

    def run(self, command: str, degree: PicClass | None = None) -> Report:
        """
        Executes a command, turning every ToriqError into an error report.
        """
        if command not in COMMANDS:
            raise ValueError(f"Unknown command '{command}'. Choose from {COMMANDS}.")
        logger.info(f"🚀 Running '{command}' on {self.document.name}...")
        report = Report(command=command, fan_name=self.document.name)
        try:
            # 1. Validation
            if not self._validate(report) or command == "validate":
                return report

            # 2. Support functions and the enough-Cartier table
            self._analyze(report)
            if command == "analyze":
                return report

            # 3. Quotient presentation
            self._quotient(report)

            # 4. Sections or certificates
            if command == "sections":
                self._sections(report, degree if degree is not None else PicClass((0,) * self.lattice.pic_rank))
            elif command == "verify":
                self._verify(report)
        except ToriqError as e:
            logger.error(f"❌ {e}")
            report.status = "error"
            report.error = e.to_dict()
            report.exit_code = e.code.exit_code

        if report.exit_code == EXIT_OK:
            logger.info(f"✅ '{command}' completed for {self.document.name}.")
        return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Homogeneous coordinate rings of toric varieties")
    parser.add_argument("command", choices=COMMANDS, help="The stage to run.")
    parser.add_argument("fan", help="Path to a fan JSON file or the name of a bundled fan.")
    parser.add_argument("--out", type=Path, default=None, help="Report path (default: results directory).")
    parser.add_argument("--degree", type=str, default=None, help="Pic class for 'sections', e.g. 2 or 1,1.")
    parser.add_argument(
        "--full-irrelevant",
        action="store_true",
        help="Compute the full minimal generating set of the irrelevant ideal.",
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the command-line interface."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
    )

    try:
        document = resolve_fan(args.fan)
        degree = parse_degree(args.degree) if args.degree is not None else None
    except ToriqError as e:
        logger.error(f"❌ {e}")
        report = Report(command=args.command, fan_name=Path(args.fan).stem, status="error")
        report.error = e.to_dict()
        report.exit_code = e.code.exit_code
    else:
        report = ToriqPipeline(document, full_irrelevant=args.full_irrelevant).run(args.command, degree)

    writer = ReportWriter(RESULTS_DIR)
    if writer.save(report, args.out) is None:
        return ErrorCode.IO_ERROR.exit_code
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
