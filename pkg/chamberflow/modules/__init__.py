"""Command modules; every public file here is loaded by ModulesManager"""
