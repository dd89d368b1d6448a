import json
from pathlib import Path

import pytest

from mmprover.kernel import parse_database
from mmprover.proofdata import extract_proof_steps, split_dataset

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# the database every integration test runs against, pinned by hash
SNAPSHOT = FIXTURES / "miniset.mm"
MANIFEST = FIXTURES / "miniset.json"

# a tiny self-contained database for parser-level unit tests
DEMO_DB = """
$c 0 + = -> ( ) term wff |- $.
$v t r s P Q $.
tt $f term t $.
tr $f term r $.
ts $f term s $.
wp $f wff P $.
wq $f wff Q $.
tze $a term 0 $.
tpl $a term ( t + r ) $.
weq $a wff t = r $.
wim $a wff ( P -> Q ) $.
a1 $a |- ( t = r -> ( t = s -> r = s ) ) $.
a2 $a |- ( t + 0 ) = t $.
${
  min $e |- P $.
  maj $e |- ( P -> Q ) $.
  mp  $a |- Q $.
$}
th1 $p |- t = t $= tt tze tpl tt weq tt tt weq tt a2 tt tze tpl tt weq tt tze
  tpl tt weq tt tt weq wim tt a2 tt tze tpl tt tt a1 mp mp $.
"""


@pytest.fixture(scope="session")
def db():
    return parse_database(SNAPSHOT.read_text())


@pytest.fixture(scope="session")
def manifest():
    return json.loads(MANIFEST.read_text())


@pytest.fixture(scope="session")
def records(db):
    return list(extract_proof_steps(db))


@pytest.fixture(scope="session")
def split(db):
    labels = [a.label for a in db.provables()]
    return split_dataset(labels, seed=11, valid_size=25, test_size=25)


@pytest.fixture(scope="session")
def demo_db():
    return parse_database(DEMO_DB)
