from .app import create_app, parse_departure_time

__all__ = ["create_app", "parse_departure_time"]
