import json
import threading

from flagtc.store import ResultStore


def test_append_and_reload(tmp_path):
    path = tmp_path / "sub" / "store.jsonl"
    store = ResultStore(path)
    store.record("F(1^2,1)", 2, "z[2,1]^3", False, 3)
    store.record("F(1^2,1)", 2, "z[2,1]^3*z[2,2]^2", True, 5)
    store.record("F(1^2,1)", 2, "z[2,1]^3", False, 3)
    again = ResultStore(path)
    assert len(again) == 2
    assert again.lookup("F(1^2,1)", 2, "z[2,1]^3")["nonzero"] is False
    assert [r["spec"] for r in again.witnesses("F(1^2,1)", 2)] == ["z[2,1]^3*z[2,2]^2"]
    rec = json.loads(path.read_text().splitlines()[0])
    assert set(rec) == {"space", "s", "spec", "nonzero", "degree", "timestamp"}


def test_concurrent_writes(tmp_path):
    path = tmp_path / "store.jsonl"
    store = ResultStore(path)

    def work(t):
        for i in range(50):
            store.record("N(2)", 3, f"c[2,1]^{i % 20}*c[3,1]^{t}", bool(i % 2), i)

    threads = [threading.Thread(target=work, args=(t,)) for t in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    lines = path.read_text().splitlines()
    assert len(lines) == len(store) == 80
    assert all(json.loads(line) for line in lines)
