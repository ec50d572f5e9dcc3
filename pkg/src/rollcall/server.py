"""HTTP/JSON API over the records, storage, imaging and idcard modules.

Every module error maps to one stable machine code in the response body;
internal text never leaks.  All /api routes except /api/login require a
bearer token from the static admin credential pair.
"""

from __future__ import annotations

import dataclasses
import datetime
import secrets
import threading
import time
from typing import Optional

from fastapi import Depends, FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse

from . import idcard, imaging, records, schema, storage
from .config import ConnectionConfig, StorageStrategy
from .db import connect
from .errors import (
    AdvisoryLockBusyError,
    AuthError,
    BarcodeError,
    CorruptImageError,
    DanglingPhotoError,
    DuplicateError,
    LayoutError,
    NotFoundError,
    OversizeError,
    RollcallError,
    StrategyError,
    UnsupportedImageError,
    ValidationError,
)
from .imaging import CropBox
from .model import (
    BLOOD_GROUPS,
    EMP_TABLE,
    MAX_SEMESTER,
    STU_TABLE,
    TABLE_ID_COLUMN,
    TABLE_RECORD,
    record_fields,
)

SESSION_TTL_S = 8 * 3600

_STATUS = {
    ValidationError: 422,
    UnsupportedImageError: 422,
    CorruptImageError: 422,
    BarcodeError: 422,
    LayoutError: 422,
    NotFoundError: 404,
    DuplicateError: 409,
    OversizeError: 413,
    DanglingPhotoError: 500,
    StrategyError: 409,
    AdvisoryLockBusyError: 409,
    AuthError: 401,
}


def _error_response(exc: RollcallError) -> JSONResponse:
    status = _STATUS.get(type(exc), 500)
    body = {"code": exc.code, "detail": exc.detail}
    if isinstance(exc, ValidationError):
        body["field"] = exc.field
    return JSONResponse(status_code=status, content=body)


class SessionStore:
    def __init__(self):
        self._tokens: dict[str, float] = {}
        self._lock = threading.Lock()

    def issue(self) -> tuple[str, float]:
        token = secrets.token_hex(24)
        expires = time.time() + SESSION_TTL_S
        with self._lock:
            self._tokens[token] = expires
        return token, expires

    def check(self, token: str) -> bool:
        with self._lock:
            expires = self._tokens.get(token)
            if expires is None:
                return False
            if expires < time.time():
                del self._tokens[token]
                return False
            return True


def _record_to_json(rec) -> dict:
    out = {}
    for k, v in dataclasses.asdict(rec).items():
        out[k] = v.isoformat() if isinstance(v, datetime.date) else v
    return out


def _json_to_record(table: str, body: dict):
    cls = TABLE_RECORD[table]
    expected = set(record_fields(table))
    unknown = set(body) - expected
    if unknown:
        raise ValidationError(sorted(unknown)[0], f"unknown field {sorted(unknown)[0]!r}")
    missing = {f for f in expected if f not in body and f not in ("middle_name", "remark")}
    if missing:
        raise ValidationError(sorted(missing)[0], f"{sorted(missing)[0]} is required")
    return cls(**body)


def create_app(
    config: ConnectionConfig,
    strategy: StorageStrategy,
    static_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="rollcall", docs_url=None, redoc_url=None)
    sessions = SessionStore()

    @app.exception_handler(RollcallError)
    async def handle_rollcall_error(request: Request, exc: RollcallError):
        return _error_response(exc)

    def db_dep():
        db = connect(config)
        try:
            yield db
        finally:
            db.close()

    def auth_dep(authorization: str = Header(default="")):
        if not authorization.startswith("Bearer "):
            raise AuthError("missing bearer token")
        if not sessions.check(authorization[len("Bearer "):]):
            raise AuthError("invalid or expired token")

    @app.get("/healthz")
    def healthz():
        report = schema.verify_schema(config, strategy)
        version = max(report.applied_versions) if report.applied_versions else 0
        return {"status": "ok" if report.ok else "degraded",
                "schema_version": version,
                "strategy": strategy.value}

    @app.post("/api/login")
    async def login(request: Request):
        body = await request.json()
        if (body.get("user") != config.admin_user
                or body.get("password") != config.admin_password):
            raise AuthError("bad credentials")
        token, expires = sessions.issue()
        return {"token": token,
                "expires_at": datetime.datetime.fromtimestamp(
                    expires, datetime.timezone.utc).isoformat()}

    @app.get("/api/meta/validation", dependencies=[Depends(auth_dep)])
    def meta_validation():
        text_bounds = {
            "first_name": 50, "middle_name": 50, "last_name": 50,
            "emp_contact_no": 15, "student_contact_no": 15,
            "dept": 20, "branch": 20, "session": 20,
            "highest_education": 20, "designation": 20, "employment_type": 20,
            "gender": 6, "blood_group": 6, "remark": 255,
        }
        return {
            "text_bounds": text_bounds,
            "blood_groups": sorted(BLOOD_GROUPS),
            "semester_range": [1, MAX_SEMESTER],
            "fields": {
                "employees": record_fields(EMP_TABLE),
                "students": record_fields(STU_TABLE),
            },
            "optional_fields": ["middle_name", "remark"],
            "max_photo_bytes": config.max_photo_bytes,
        }

    @app.get("/api/meta/autocrop", dependencies=[Depends(auth_dep)])
    def meta_autocrop(w: int, h: int, aspect_w: int = 3, aspect_h: int = 4):
        box = imaging.auto_crop_box(w, h, aspect_w, aspect_h)
        return {"x": box.x, "y": box.y, "width": box.width, "height": box.height}

    def register_family(kind: str, table: str):
        id_col = TABLE_ID_COLUMN[table]

        @app.post(f"/api/{kind}", status_code=201, dependencies=[Depends(auth_dep)])
        async def create(request: Request, db=Depends(db_dep)):
            rec = _json_to_record(table, await request.json())
            records.create_record(db, table, rec)
            return _record_to_json(rec)

        @app.get(f"/api/{kind}/{{rec_id}}", dependencies=[Depends(auth_dep)])
        def get_one(rec_id: int, db=Depends(db_dep)):
            rec = records.get_record(db, table, rec_id)
            if rec is None:
                raise NotFoundError(f"no {kind} record {rec_id}")
            return _record_to_json(rec)

        @app.put(f"/api/{kind}/{{rec_id}}", dependencies=[Depends(auth_dep)])
        async def update(rec_id: int, request: Request, db=Depends(db_dep)):
            body = await request.json()
            body.setdefault(id_col, rec_id)
            if body[id_col] != rec_id:
                raise ValidationError(id_col, "id in body does not match path")
            rec = _json_to_record(table, body)
            if not records.update_record(db, table, rec):
                raise NotFoundError(f"no {kind} record {rec_id}")
            return _record_to_json(rec)

        @app.delete(f"/api/{kind}/{{rec_id}}", dependencies=[Depends(auth_dep)])
        def delete(rec_id: int, db=Depends(db_dep)):
            if not records.delete_record(db, table, rec_id):
                raise NotFoundError(f"no {kind} record {rec_id}")
            return {"deleted": True}

        @app.get(f"/api/{kind}", dependencies=[Depends(auth_dep)])
        def list_page(
            request: Request,
            page: int = Query(default=1, ge=1),
            limit: int = Query(default=50),
            db=Depends(db_dep),
        ):
            filters = {
                k: (int(v) if k == "semester" else v)
                for k, v in request.query_params.items()
                if k in records.LIST_FILTERS[table]
            }
            recs, total = records.list_records(
                db, table, filters or None, offset=(page - 1) * limit, limit=limit
            )
            return {"items": [_record_to_json(r) for r in recs],
                    "total": total, "page": page, "limit": limit}

        @app.put(f"/api/{kind}/{{rec_id}}/photo", dependencies=[Depends(auth_dep)])
        async def put_photo(
            rec_id: int,
            request: Request,
            box_x: Optional[int] = None,
            box_y: Optional[int] = None,
            box_w: Optional[int] = None,
            box_h: Optional[int] = None,
            db=Depends(db_dep),
        ):
            length = request.headers.get("content-length")
            if length and int(length) > config.max_photo_bytes:
                raise OversizeError(f"photo exceeds {config.max_photo_bytes} bytes")
            data = await request.body()
            if len(data) > config.max_photo_bytes:
                raise OversizeError(f"photo exceeds {config.max_photo_bytes} bytes")
            box = None
            if None not in (box_x, box_y, box_w, box_h):
                box = CropBox(box_x, box_y, box_w, box_h)
            blob = imaging.normalize_badge_photo(data, box)
            ref = storage.store_photo(db, strategy, table, rec_id, blob,
                                      max_bytes=config.max_photo_bytes)
            return {"stored": True, "object_id": ref.object_id,
                    "width": blob.width_px, "height": blob.height_px}

        @app.get(f"/api/{kind}/{{rec_id}}/photo", dependencies=[Depends(auth_dep)])
        def get_photo(rec_id: int, db=Depends(db_dep)):
            blob = storage.fetch_photo(db, strategy, table, rec_id)
            if blob is None:
                return JSONResponse(status_code=404, content={
                    "code": "no_photo", "detail": f"no photo stored for {kind} {rec_id}"})
            media = "image/png" if blob.format == "PNG" else "image/jpeg"
            return Response(content=blob.data, media_type=media)

        @app.get(f"/api/{kind}/{{rec_id}}/idcard.png", dependencies=[Depends(auth_dep)])
        def get_idcard(rec_id: int, db=Depends(db_dep)):
            rec = records.get_record(db, table, rec_id)
            if rec is None:
                raise NotFoundError(f"no {kind} record {rec_id}")
            photo = storage.fetch_photo(db, strategy, table, rec_id)
            card = idcard.render_card(rec, photo)
            return Response(content=card.data, media_type="image/png")

    register_family("employees", EMP_TABLE)
    register_family("students", STU_TABLE)

    @app.post("/api/admin/vacuum-orphans", dependencies=[Depends(auth_dep)])
    def vacuum(db=Depends(db_dep)):
        return {"reclaimed": storage.vacuum_orphans(db, strategy)}

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def serve(
    config: ConnectionConfig,
    strategy: StorageStrategy,
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: Optional[str] = None,
) -> None:
    """Refuses to start against a wrong-version schema."""
    import uvicorn

    report = schema.verify_schema(config, strategy)
    if not report.ok:
        from .errors import SchemaVerificationError

        raise SchemaVerificationError(
            f"schema verification failed, missing: {report.missing_objects}"
        )
    app = create_app(config, strategy, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
