#!/usr/bin/env python3
"""Regenerate the bundled sample-session fixtures.

Drives the recorded review session against a hand-designed scripted
responder, capturing every oracle exchange into the package's fixture
directory. Run from the repository root after changing prompt templates,
the sample corpus, or the designed responses:

    python3 tools/generate_sample_fixtures.py
"""

from __future__ import annotations

import re
import shutil
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from kgworkbench.oracle import Oracle, RecordingTransport, ScriptedTransport
from kgworkbench.sampledata import run_sample_session, sample_fixture_dir

PREFIX = "@prefix rv: <http://example.org/riscv#> .\n"

ITEM1_A = PREFIX + """
# Fact 1: ADDI
rv:ADDI rv:readsFrom rv:Register_rs1 ;
    rv:addsOperand rv:Immediate ;
    rv:writesTo rv:Register_rd ;
    rv:ignoresOverflow "true" .

# Fact 2: the immediate
rv:Immediate rv:width "12" ;
    rv:isSignExtended "true" .
"""

ITEM1_B = ITEM1_A + 'rv:ADDI rv:category "integer computational" .\n'

ITEM2_A = PREFIX + """
rv:ANDI rv:performsOperation "bitwise AND" ;
    rv:readsFrom rv:Register_rs1 ;
    rv:usesOperand rv:Immediate .

rv:ORI rv:performsOperation "bitwise OR" ;
    rv:readsFrom rv:Register_rs1 ;
    rv:usesOperand rv:Immediate .

rv:XORI rv:performsOperation "bitwise XOR" ;
    rv:readsFrom rv:Register_rs1 ;
    rv:usesOperand rv:Immediate .
"""

ITEM3_A = PREFIX + """
rv:Hart rv:isA rv:HardwareThread ;
    rv:hasOwn "program counter" .

rv:HardwareThread rv:locatedIn "RISC-V core" .
"""

ITEM3_BROKEN = "A hart is a hardware thread of execution {"

ITEM4_A = PREFIX + """
rv:ExecutionEnvironmentInterface rv:defines "program start" ;
    rv:governs rv:HartInteraction .

rv:HartInteraction rv:involves "surrounding platform" .

rv:EEI_Property rv:groups rv:HartInteraction ;
    rv:describes rv:ExecutionEnvironmentInterface .
"""

ITEM4_VARIANT = ITEM4_A.replace("program start", "program startup")

ITEM5_BFA_A = PREFIX + """
rv:RV32I rv:isA rv:BaseIntegerISA ;
    rv:integerRegisterWidth "32" .

rv:RV64I rv:isA rv:BaseIntegerISA ;
    rv:integerRegisterWidth "64" ;
    rv:widens rv:RV32I .
"""

ITEM5_BFA_B = ITEM5_BFA_A.replace('"64"', '"64 bits"')
ITEM5_BFA_C = ITEM5_BFA_A + 'rv:BaseIntegerISA rv:label "base integer ISA" .\n'

ITEM6_A = PREFIX + """
rv:Trap rv:transfersControlTo rv:Handler .

rv:ContainedTrap rv:handledInside rv:ExecutionEnvironment .

rv:FatalTrap rv:halts rv:ExecutionEnvironment .

rv:TrapCategory rv:groups rv:ContainedTrap ;
    rv:alsoGroups rv:FatalTrap .
"""

ITEM6_B = PREFIX + """
rv:Trap rv:transfersControlTo rv:Handler .

rv:ContainedTrap rv:handledInside rv:ExecutionEnvironment .

rv:FatalTrap rv:halts rv:ExecutionEnvironment .
"""

ITEM6_BFA_A = PREFIX + """
rv:Trap rv:transfersControlTo rv:Handler .

rv:ContainedTrap rv:isA rv:Trap ;
    rv:handledInside rv:ExecutionEnvironment .

rv:FatalTrap rv:isA rv:Trap ;
    rv:halts rv:ExecutionEnvironment .
"""

# response sequence per (paragraph opener, with background facts)
KGC_SEQUENCES = {
    ("The ADDI", False): [
        ITEM1_A, ITEM1_A, ITEM1_A, ITEM1_B, ITEM1_A,
        ITEM1_A, ITEM1_A, ITEM1_B, ITEM1_A, ITEM1_A,
    ],
    ("The ANDI", False): [ITEM2_A] * 10,
    ("A hart", False): [ITEM3_A] * 7 + [ITEM3_BROKEN] * 3,
    ("An execution environment interface", False): (
        [ITEM4_A] * 5 + [ITEM4_VARIANT] + [ITEM4_A] * 4
    ),
    ("RV32I is", False): [
        f"RV32I and RV64I are ISA variants, attempt {i} {{" for i in range(10)
    ],
    ("RV32I is", True): (
        [ITEM5_BFA_A] * 6 + [ITEM5_BFA_B] * 2 + [ITEM5_BFA_C] * 2
    ),
    ("Traps transfer", False): [ITEM6_A, ITEM6_B] * 5,
    ("Traps transfer", True): [ITEM6_BFA_A] * 10,
}

SENTENCES = {
    "ADDI": "ADDI adds the sign-extended immediate to rs1 and writes the result to rd.",
    "Immediate": "The immediate is a sign-extended 12-bit value.",
    "ANDI": "ANDI performs a bitwise AND of rs1 and the immediate.",
    "ORI": "ORI performs a bitwise OR of rs1 and the immediate.",
    "XORI": "XORI performs a bitwise XOR of rs1 and the immediate.",
    "Hart": "A hart is a hardware thread with its own program counter.",
    "HardwareThread": "A hardware thread is located in a RISC-V core.",
    "ExecutionEnvironmentInterface": (
        "The execution environment interface defines program start and governs hart interaction."
    ),
    "HartInteraction": "Harts interact with the surrounding platform.",
    "EEI_Property": "EEI_Property groups the interface concerns.",
    "RV32I": "RV32I is the base 32-bit integer instruction set.",
    "RV64I": "RV64I widens the integer registers to 64 bits.",
    "Trap": "A trap transfers control to a handler.",
    "ContainedTrap": "A contained trap is handled inside the execution environment.",
    "FatalTrap": "A fatal trap halts the execution environment.",
    "TrapCategory": "TrapCategory classifies the kinds of traps.",
}

# entities the designed oracle invented; their facts fail entailment
AUXILIARY_SUBJECTS = {"EEI_Property", "TrapCategory"}


def designed_script(prompt: str, params, repeat_index: int) -> str:
    first_line = prompt.splitlines()[0]
    if first_line.startswith("Construct a knowledge graph"):
        paragraph = prompt.split("Paragraph:\n", 1)[1].strip()
        with_bf = "Background facts:" in prompt
        for (opener, flagged), seq in KGC_SEQUENCES.items():
            if paragraph.startswith(opener) and flagged == with_bf:
                return seq[repeat_index]
        raise AssertionError(f"no designed response for: {paragraph[:40]!r}")
    if first_line.startswith("Convert the rdf block"):
        subject = re.search(r"rv:(\w+)", prompt).group(1)
        return SENTENCES[subject]
    if first_line.startswith("Answer yes or no"):
        sentence = prompt.split("Statement of fact:\n", 1)[1].strip()
        subject = next(s for s, t in SENTENCES.items() if t == sentence)
        if subject in AUXILIARY_SUBJECTS:
            return f"No. The paragraph does not mention {subject}."
        return "Yes, the paragraph states this."
    raise AssertionError(f"unrecognized prompt: {first_line!r}")


def main() -> None:
    fixture_dir = sample_fixture_dir()
    if fixture_dir.exists():
        shutil.rmtree(fixture_dir)
    fixture_dir.mkdir(parents=True)
    transport = RecordingTransport(ScriptedTransport(designed_script), fixture_dir)
    with tempfile.TemporaryDirectory() as workdir:
        result = run_sample_session(Path(workdir), Oracle(transport))
    count = len(list(fixture_dir.glob("*.json")))
    print(f"recorded {count} fixture files into {fixture_dir}")
    for key, run_id in sorted(result["runs"].items()):
        print(f"  {key}: {run_id}")


if __name__ == "__main__":
    main()
